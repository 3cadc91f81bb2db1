#include "oracles.hpp"

#include "qsteiner/error.hpp"
#include "qsteiner/steiner.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace qsteiner;

namespace {

const DesignSpace& pg32()
{
    static DesignSpace space(ParamSet(1, 2, 4, 2));
    return space;
}

const std::vector<Design>& pg32_spreads()
{
    static std::vector<Design> all = enumerate_steiner(pg32());
    return all;
}

} // namespace

TEST_CASE("parameters and lambda_i")
{
    ParamSet p(1, 2, 4, 2);
    CHECK(p.lambda_i(1) == 1);
    CHECK(p.lambda_i(0) == 5);
    CHECK(p.block_count() == 5);
    CHECK(p.admissible());
    CHECK(p.n_at_least_2k());
    CHECK(p.label() == "(t,k,n,q)=(1,2,4,2)");

    ParamSet big(2, 3, 13, 2);
    CHECK(big.lambda_i(1) == 1365);
    CHECK(big.lambda_i(2) == 1);
    CHECK(big.admissible());

    ParamSet bad(1, 2, 5, 2);
    CHECK_FALSE(bad.admissible());
    CHECK(bad.inadmissibility_reason().find("31") != std::string::npos);
    CHECK(bad.inadmissibility_reason(3) == "");

    CHECK_THROWS_AS(ParamSet(3, 2, 4, 2), InvalidArgument);
    CHECK_THROWS_AS(ParamSet(0, 2, 4, 2), InvalidArgument);
    CHECK_THROWS_AS(ParamSet(1, 2, 4, 6), InvalidArgument);
}

TEST_CASE("every lambda_i is integral exactly when admissible")
{
    for (unsigned long q : {2ul, 3ul})
        for (unsigned n = 2; n <= 9; ++n)
            for (unsigned k = 2; k <= n; ++k)
                for (unsigned t = 1; t < k; ++t) {
                    ParamSet p(t, k, n, q);
                    bool integral = true;
                    for (unsigned i = 0; i <= t; ++i)
                        integral = integral && p.lambda_i(i).get_den() == 1;
                    CHECK(integral == p.admissible());
                }
}

TEST_CASE("PG(3,2) spreads: enumeration against the bitmask oracle")
{
    const auto& all = pg32_spreads();
    CHECK(all.size() == 56);
    CHECK(oracle::count_pg32_spreads() == 56);
    CHECK(std::is_sorted(all.begin(), all.end()));
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
    for (const auto& d : all) {
        CHECK(d.blocks.size() == 5);
        CHECK(verify_design(d, pg32()).ok);
    }
    CHECK(enumerate_steiner(pg32()) == all);
}

TEST_CASE("enumeration edge cases")
{
    DesignSpace bad(ParamSet(1, 2, 5, 2));
    CHECK(enumerate_steiner(bad).empty());
    // t = k: the only system is the whole Grassmannian.
    DesignSpace whole(ParamSet(2, 2, 4, 2));
    auto one = enumerate_steiner(whole);
    REQUIRE(one.size() == 1);
    CHECK(one[0].blocks.size() == 35);
    CHECK_THROWS_AS(enumerate_steiner(DesignSpace(ParamSet(1, 2, 4, 3)), 100), GuardExceeded);
}

TEST_CASE("sampling")
{
    auto five = sample_steiner(pg32(), 1, 5);
    CHECK(five.designs.size() == 5);
    CHECK_FALSE(five.partial);
    std::set<Design> distinct(five.designs.begin(), five.designs.end());
    CHECK(distinct.size() == 5);
    for (const auto& d : five.designs)
        CHECK(verify_design(d, pg32()).ok);
    CHECK(sample_steiner(pg32(), 1, 0).designs.empty());
    CHECK(sample_steiner(pg32(), 1, 5).designs == five.designs);
    // More designs than exist: all 56 come back and the run is partial.
    auto over = sample_steiner(pg32(), 2, 60, 2'000'000);
    CHECK(over.designs.size() == 56);
    CHECK(over.partial);

    DesignSpace s3(ParamSet(1, 2, 4, 3));
    auto twenty = sample_steiner(s3, 1, 20);
    CHECK(twenty.designs.size() == 20);
    std::set<Design> d3(twenty.designs.begin(), twenty.designs.end());
    CHECK(d3.size() == 20);
    for (const auto& d : twenty.designs) {
        CHECK(d.blocks.size() == 10);
        CHECK(verify_design(d, s3).ok);
    }
    auto more = sample_steiner(s3, 1, 30);
    CHECK(std::equal(twenty.designs.begin(), twenty.designs.end(), more.designs.begin()));

    CHECK_THROWS_AS(sample_steiner(DesignSpace(ParamSet(1, 2, 5, 2)), 1, 3), InvalidArgument);
}

TEST_CASE("verify_design on explicit block lists")
{
    const auto& space = pg32();
    auto field = space.params().field();
    // The whole Grassmannian is a design with lambda = [n-t k-t].
    std::vector<Subspace> all(space.blocks().begin(), space.blocks().end());
    CHECK(verify_design(all, space.params(), 7).ok);
    CHECK_FALSE(verify_design(all, space.params(), 1).ok);

    auto blocks = design_subspaces(pg32_spreads()[0], space);
    CHECK(verify_design(blocks, space.params()).ok);

    // Replace one line by a line meeting it.
    auto broken = blocks;
    for (const auto& cand : space.blocks())
        if (intersection_dim(cand, blocks[0], *field) == 1) {
            broken[0] = cand;
            break;
        }
    DesignVerdict v = verify_design(broken, space.params());
    CHECK_FALSE(v.ok);
    REQUIRE(v.witness);
    CHECK(v.witness->dim == 1);
    CHECK(v.witness_coverage != 1);

    auto missing = blocks;
    missing.pop_back();
    DesignVerdict m = verify_design(missing, space.params());
    CHECK_FALSE(m.ok);
    REQUIRE(m.witness);
    CHECK(m.witness_coverage == 0);
    CHECK(contains(blocks.back(), *m.witness, *field));

    std::vector<Subspace> wrong_shape{space.points()[0]};
    CHECK_THROWS_AS(verify_design(wrong_shape, space.params()), InvalidArgument);
}

TEST_CASE("incidence matrix, kappa and the Gram decomposition")
{
    const auto& space = pg32();
    const auto& all = pg32_spreads();
    const ParamSet& p = space.params();
    ExactMatrix u = incidence_matrix(all, 35);
    CHECK(u.rows() == 35);
    CHECK(u.cols() == 56);
    for (std::size_t r = 0; r < 35; ++r) {
        Rational sum = 0;
        for (std::size_t c = 0; c < 56; ++c)
            sum += u(r, c);
        CHECK(sum == 8);
    }
    CHECK(rank_exact(u) == 21);
    CHECK(rank_mod_p(u, 1000003) == 21);

    CHECK(kappa_formula(56, p) == 8);
    CHECK(kappa_formula(0, p) == 0);
    CHECK(kappa_formula(1, p) == Rational(1, 7));  // 15 / (35 * 3)
    CHECK(kappa_i_formula(56, 0, p) == 2);
    CHECK(kappa_i_formula(56, 1, p) == 0);
    CHECK(kappa_i_formula(56, 2, p) == 0);

    SchemeInstance scheme(space.blocks_ptr());
    ExactMatrix gram = mat_mul(u, u.transpose());
    for (std::size_t x = 0; x < 35; ++x)
        for (std::size_t y = 0; y < 35; ++y) {
            if (x == y)
                CHECK(gram(x, y) == 8);
            else
                CHECK((gram(x, y) == 0 || gram(x, y) == 2));
        }
    EmpiricalGram emp = empirical_gram(gram, scheme);
    CHECK(emp.constant);
    CHECK(emp.kappa == 8);
    CHECK(emp.kappa_i[0] == 2);
    GramCoefficients coeffs = gram_coefficients_formula(56, p);
    CHECK(gram_check(gram, coeffs, scheme));
    CHECK(gram_check_from_incidence(u, coeffs, scheme));
    ExactMatrix expected = Rational(8) * ExactMatrix::identity(35) + Rational(2) * adjacency_matrix(scheme, 2);
    CHECK(gram == expected);

    ExactMatrix empty = incidence_matrix({}, 35);
    CHECK(empty.cols() == 0);
    CHECK(rank_exact(empty) == 0);
    CHECK(gram_check_from_incidence(empty, gram_coefficients_formula(0, p), scheme));

    ExactMatrix flipped = u;
    flipped(3, 7) = 1 - flipped(3, 7);
    CHECK_FALSE(gram_check_from_incidence(flipped, coeffs, scheme));
}

TEST_CASE("mu_r: closed form, spectral form and the actual spectrum")
{
    const ParamSet p(1, 2, 4, 2);
    GramCoefficients coeffs = gram_coefficients_formula(56, p);
    CHECK(mu_eigenvalue(p, 0, 8) == 40);
    CHECK(mu_eigenvalue(p, 1, 8) == 0);
    CHECK(mu_eigenvalue(p, 2, 8) == 12);
    for (unsigned r = 0; r <= 2; ++r)
        CHECK(mu_from_scheme(p, r, coeffs) == mu_eigenvalue(p, r, 8));

    ExactMatrix u = incidence_matrix(pg32_spreads(), 35);
    ExactMatrix gram = mat_mul(u, u.transpose());
    auto groups = grouped_rank_check(gram, {40, 0, 12}, {1, 14, 20});
    for (const auto& g : groups)
        CHECK(g.ok);
    CHECK(1 * 40 + 14 * 0 + 20 * 12 == 35 * 8);
}

TEST_CASE("mu_r over the parameter grid")
{
    for (unsigned long q : {2ul, 3ul})
        for (unsigned n = 2; n <= 10; ++n)
            for (unsigned k = 2; 2 * k <= n; ++k)
                for (unsigned t = 1; t < k; ++t) {
                    ParamSet p(t, k, n, q);
                    GramCoefficients c = gram_coefficients_formula(1, p);
                    for (unsigned r = 0; r <= k; ++r) {
                        Rational mu = mu_eigenvalue(p, r, c.kappa);
                        CHECK(mu == mu_from_scheme(p, r, c));
                        if (r >= 1 && r <= t)
                            CHECK(mu == 0);
                        else
                            CHECK(mu != 0);
                    }
                }
}

TEST_CASE("intersect_count")
{
    CHECK(intersect_count(ParamSet(1, 2, 4, 2), 0) == 4);
    CHECK(intersect_count(ParamSet(1, 2, 6, 2), 0) == 20);
    // Every other block meets X in exactly one i-space with i < t.
    for (unsigned long q : {2ul, 3ul, 4ul})
        for (unsigned n = 3; n <= 9; ++n)
            for (unsigned k = 2; k < n; ++k)
                for (unsigned t = 1; t < k; ++t) {
                    ParamSet p(t, k, n, q);
                    if (!p.admissible())
                        continue;
                    Rational sum = 0;
                    for (unsigned i = 0; i < t; ++i)
                        sum += gauss_binom(k, i, q) * intersect_count(p, i);
                    CHECK(sum == p.block_count() - 1);
                }
    for (const auto& d : pg32_spreads()) {
        auto obs = observe_intersections(d, pg32());
        REQUIRE(obs.size() == 1);
        CHECK(obs[0].ok);
        CHECK(obs[0].observed == std::vector<std::uint64_t>{4});
    }
}

TEST_CASE("dimension formula and the inclusion matrix")
{
    CHECK(dimension_formula(ParamSet(1, 2, 4, 2)) == 21);
    CHECK(dimension_formula(ParamSet(1, 2, 4, 3)) == 91);
    CHECK(Rational(dimension_formula(ParamSet(2, 3, 13, 2))) ==
          gauss_binom(13, 3, 2) - gauss_binom(13, 2, 2) + 1);

    ExactMatrix w = inclusion_matrix(pg32());
    CHECK(w.rows() == 15);
    CHECK(w.cols() == 35);
    CHECK(rank_exact(w) == 15);
    for (const auto& d : pg32_spreads()) {
        ExactMatrix chi(35, 1);
        for (auto b : d.blocks)
            chi(b, 0) = 1;
        ExactMatrix wc = mat_mul(w, chi);
        for (std::size_t r = 0; r < 15; ++r)
            CHECK(wc(r, 0) == 1);
    }
    DesignSpace degenerate(ParamSet(2, 2, 4, 2));
    ExactMatrix wd = inclusion_matrix(degenerate);
    CHECK(wd == ExactMatrix::identity(35));
}

TEST_CASE("rank certificate")
{
    RankCertificate all = rank_certificate(pg32(), pg32_spreads());
    CHECK(all.covers_all_ones);
    CHECK(all.differences_annihilate);
    CHECK(all.rank_inclusion == 15);
    CHECK(all.upper_bound == 21);
    CHECK(all.lower_bound == 21);
    CHECK(all.dimension == 21);
    CHECK(all.meets);

    std::vector<Design> three(pg32_spreads().begin(), pg32_spreads().begin() + 3);
    RankCertificate few = rank_certificate(pg32(), three);
    CHECK(few.lower_bound <= 3);
    CHECK(few.upper_bound == 21);
    CHECK_FALSE(few.meets);
}
