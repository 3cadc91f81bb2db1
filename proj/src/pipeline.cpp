#include "qsteiner/pipeline.hpp"

#include "qsteiner/design_io.hpp"
#include "qsteiner/error.hpp"
#include "qsteiner/grassmann.hpp"

#include <json.hpp>

#include <algorithm>

namespace qsteiner {

using ojson = nlohmann::ordered_json;

namespace {

std::string frac(const Rational& r) { return to_string(r); }

ojson param_value(const Rational& v)
{
    if (v.get_den() == 1 && v.get_num().fits_slong_p())
        return v.get_num().get_si();
    return frac(v);
}

ojson params_json(const std::vector<std::pair<std::string, Rational>>& p)
{
    ojson o = ojson::object();
    for (const auto& [name, v] : p)
        o[name] = param_value(v);
    return o;
}

ojson params_json(const ParamSet& p)
{
    return ojson{{"t", p.t()}, {"k", p.k()}, {"n", p.n()}, {"q", p.q()}};
}

ojson subspace_json(const Subspace& s)
{
    ojson m = ojson::array();
    for (unsigned r = 0; r < s.dim; ++r) {
        ojson row = ojson::array();
        for (unsigned c = 0; c < s.ambient_n; ++c)
            row.push_back(static_cast<unsigned>(s.at(r, c)));
        m.push_back(std::move(row));
    }
    return m;
}

std::string csv_params(const std::vector<std::pair<std::string, Rational>>& p)
{
    std::string out;
    for (const auto& [name, v] : p) {
        if (!out.empty())
            out += ';';
        out += name + "=" + frac(v);
    }
    return out;
}

ojson row_json(const SweepRow& row)
{
    ojson o;
    if (row.report) {
        const IdentityReport& r = *row.report;
        o["identity"] = r.name;
        o["parameters"] = params_json(r.parameters);
        o["lhs"] = frac(r.lhs);
        o["rhs"] = frac(r.rhs);
        if (r.alt_rhs)
            o["alt_rhs"] = frac(*r.alt_rhs);
        o["equal"] = r.equal;
        o["expected_equal"] = r.expected_equal;
        o["status"] = r.passed() ? "pass" : "fail";
    } else if (row.valuation) {
        const ValuationReport& v = *row.valuation;
        o["identity"] = "mu_zero_valuation";
        o["parameters"] = ojson{{"n", v.n}, {"k", v.k}, {"t", v.t}, {"r", v.r}, {"q", v.q}};
        o["sum"] = frac(v.sum);
        o["lhs"] = v.valuation.is_infinite() ? std::string("inf") : std::to_string(v.valuation.value());
        o["rhs"] = std::to_string(v.expected);
        o["equal"] = v.equal;
        o["expected_equal"] = true;
        o["status"] = v.equal ? "pass" : "fail";
    } else {
        o["identity"] = row.skipped_name;
        o["parameters"] = params_json(row.skipped_parameters);
        o["status"] = "skipped";
        o["reason"] = row.skip_reason;
    }
    return o;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

void write_csv_row(std::ostream& os, const SweepRow& row)
{
    ojson o = row_json(row);
    auto get = [&](const char* key) -> std::string {
        if (!o.contains(key))
            return "";
        const ojson& v = o[key];
        if (v.is_string())
            return v.get<std::string>();
        return v.dump();
    };
    std::vector<std::pair<std::string, Rational>> p;
    if (row.report)
        p = row.report->parameters;
    else if (row.valuation)
        p = {{"n", Rational(row.valuation->n)}, {"k", Rational(row.valuation->k)},
             {"t", Rational(row.valuation->t)}, {"r", Rational(row.valuation->r)},
             {"q", Rational(static_cast<unsigned long>(row.valuation->q))}};
    else
        p = row.skipped_parameters;
    os << csv_field(get("identity")) << ',' << csv_field(csv_params(p)) << ',' << csv_field(get("lhs"))
       << ',' << csv_field(get("rhs")) << ',' << csv_field(get("alt_rhs")) << ',' << get("equal") << ','
       << get("expected_equal") << ',' << get("status") << ',' << csv_field(get("reason")) << '\n';
}

ojson groups_json(const std::vector<EigenGroup>& groups)
{
    ojson arr = ojson::array();
    for (const auto& g : groups)
        arr.push_back(ojson{{"value", frac(g.value)},
                            {"members", g.members},
                            {"multiplicity", g.multiplicity.get_str()},
                            {"expected_rank", g.expected_rank},
                            {"rank", g.rank},
                            {"ok", g.ok}});
    return arr;
}

ojson certificate_json(const RankCertificate& c)
{
    return ojson{{"designs", c.designs},
                 {"k_spaces", c.k_spaces},
                 {"t_spaces", c.t_spaces},
                 {"rank_inclusion", c.rank_inclusion},
                 {"rank_differences", c.rank_differences},
                 {"covers_all_ones", c.covers_all_ones},
                 {"differences_annihilate", c.differences_annihilate},
                 {"upper_bound", c.upper_bound},
                 {"lower_bound", c.lower_bound},
                 {"lower_bound_method", c.lower_bound_method},
                 {"dimension_formula", c.dimension.get_str()},
                 {"meets", c.meets}};
}

ParamSet checked_params(const DimensionOptions& o)
{
    ParamSet p(o.t, o.k, o.n, o.q);
    if (p.t() >= p.k())
        throw InvalidArgument("need t < k, got " + p.label());
    if (!p.admissible())
        throw Inadmissible(p.label() + ": " + p.inadmissibility_reason());
    return p;
}

struct Collected {
    std::vector<Design> designs;
    bool complete = false;   // full enumeration
    bool partial = false;    // sampling ran out of budget
    std::uint64_t nodes = 0;
};

Collected collect(const DesignSpace& space, const DimensionOptions& o, std::size_t count)
{
    Collected c;
    if (o.sample) {
        SampleResult s = sample_steiner(space, o.seed, count, o.node_budget);
        c.designs = std::move(s.designs);
        c.partial = s.partial;
        c.nodes = s.nodes;
    } else {
        c.designs = enumerate_steiner(space, o.max_designs);
        c.complete = true;
    }
    return c;
}

} // namespace

RunResult run_identities(const SweepConfig& config, SweepFormat format, std::ostream& rows)
{
    bool first = true;
    if (format == SweepFormat::json)
        rows << "{\"rows\":[\n";
    else
        rows << "identity,parameters,lhs,rhs,alt_rhs,equal,expected_equal,status,reason\n";
    SweepSummary summary = run_identity_sweep(config, [&](const SweepRow& row) {
        if (format == SweepFormat::json) {
            if (!first)
                rows << ",\n";
            rows << row_json(row).dump();
        } else {
            write_csv_row(rows, row);
        }
        first = false;
    });

    ojson per = ojson::object();
    for (const auto& [name, t] : summary.per_identity)
        per[name] = ojson{{"checked", t.checked}, {"failed", t.failed}, {"skipped", t.skipped}};
    ojson qs = ojson::array();
    for (auto q : config.qs)
        qs.push_back(q);
    ojson report{{"command", "identities"},
                 {"q", qs},
                 {"max_n", config.max_n},
                 {"checked", summary.checked},
                 {"failed", summary.failed},
                 {"skipped", summary.skipped},
                 {"identities", per},
                 {"passed", summary.failed == 0}};
    if (format == SweepFormat::json)
        rows << (first ? "" : "\n") << "],\n\"summary\":" << report.dump() << "}\n";
    return RunResult{summary.failed == 0, report.dump(2) + "\n"};
}

RunResult run_scheme(unsigned n, unsigned k, unsigned long q)
{
    if (k > n)
        throw InvalidArgument("scheme: need k <= n");
    SchemeInstance s(n, k, FieldSpec::make(static_cast<unsigned>(q)));
    SpectrumReport sp = verify_spectrum(s);
    ClosureReport cl = check_closure(s);

    ojson relations = ojson::array();
    for (const auto& rs : sp.relations) {
        ojson eig = ojson::array();
        for (const auto& e : rs.eigenvalues)
            eig.push_back(ojson{{"r", e.r},
                                {"eberlein", frac(e.eberlein)},
                                {"eisfeld", frac(e.eisfeld)},
                                {"multiplicity", e.multiplicity.get_str()}});
        relations.push_back(ojson{{"i", rs.i},
                                  {"eigenvalues", eig},
                                  {"groups", groups_json(rs.groups)},
                                  {"trace", frac(rs.trace)},
                                  {"formulas_agree", rs.formulas_agree},
                                  {"row_sum_ok", rs.row_sum_ok},
                                  {"symmetric", rs.symmetric},
                                  {"ok", rs.ok}});
    }
    ojson constants = ojson::array();
    for (const auto& row : cl.constants) {
        ojson r1 = ojson::array();
        for (const auto& col : row) {
            ojson r2 = ojson::array();
            for (const auto& v : col)
                r2.push_back(v.get_str());
            r1.push_back(std::move(r2));
        }
        constants.push_back(std::move(r1));
    }
    const bool passed = sp.ok && cl.ok;
    ojson report{{"command", "scheme"},
                 {"n", n},
                 {"k", k},
                 {"q", q},
                 {"size", sp.size},
                 {"multiplicity_sum", sp.multiplicity_sum.get_str()},
                 {"multiplicity_sum_ok", sp.multiplicity_sum_ok},
                 {"partition_ok", sp.partition_ok},
                 {"relations", relations},
                 {"closure", ojson{{"structure_constants", constants}, {"ok", cl.ok}}},
                 {"passed", passed}};
    return RunResult{passed, report.dump(2) + "\n"};
}

RunResult run_dimension(const DimensionOptions& o)
{
    const ParamSet p = checked_params(o);
    DesignSpace space(p);
    const Integer dim = dimension_formula(p);

    ExactMatrix w = inclusion_matrix(space);
    const std::size_t rank_w = rank_exact(w);
    ExactMatrix diff(w.rows() - 1, w.cols());
    for (std::size_t r = 1; r < w.rows(); ++r)
        for (std::size_t c = 0; c < w.cols(); ++c)
            diff(r - 1, c) = w(r, c) - w(0, c);
    const std::size_t rank_diff = rank_exact(diff);

    // Sampling grows the sample until the rank stops short of nothing.
    std::size_t count = o.count;
    if (o.sample && count == 0)
        count = static_cast<std::size_t>(std::min<unsigned long>(dim.fits_ulong_p() ? dim.get_ui() : 1ul << 20,
                                                                 1ul << 20)) * 2 + 10;
    Collected got = collect(space, o, count);
    RankCertificate cert = rank_certificate(space, got.designs, w, rank_w, rank_diff);
    for (int round = 0; o.sample && o.count == 0 && round < 5; ++round) {
        if (cert.lower_bound >= cert.upper_bound || got.partial || got.designs.size() < count)
            break;
        count *= 2;
        got = collect(space, o, count);
        cert = rank_certificate(space, got.designs, w, rank_w, rank_diff);
    }

    bool passed = true;
    ojson report{{"command", "dimension"},
                 {"params", params_json(p)},
                 {"mode", o.sample ? "sample" : "enumerate"}};
    if (o.sample) {
        report["seed"] = o.seed;
        report["requested"] = count;
        report["partial"] = got.partial;
        report["search_nodes"] = got.nodes;
        passed = passed && !got.partial;
    }
    report["designs"] = got.designs.size();
    report["block_count"] = frac(p.block_count());

    std::size_t verified = 0;
    for (const auto& d : got.designs)
        if (verify_design(d, space).ok)
            ++verified;
    report["verified_designs"] = verified;
    passed = passed && verified == got.designs.size() && !got.designs.empty();

    if (got.complete && !got.designs.empty()) {
        const Integer N(static_cast<unsigned long>(got.designs.size()));
        ExactMatrix u = incidence_matrix(got.designs, space.blocks().size());
        ExactMatrix gram = mat_mul(u, u.transpose());
        SchemeInstance scheme(space.blocks_ptr());
        EmpiricalGram emp = empirical_gram(gram, scheme);
        GramCoefficients formula = gram_coefficients_formula(N, p);

        ojson kappa_i = ojson::array();
        bool kappa_ok = emp.constant && emp.kappa == formula.kappa;
        for (unsigned i = 0; i <= p.k(); ++i) {
            bool eq = emp.kappa_i[i] == formula.kappa_i[i];
            kappa_ok = kappa_ok && eq;
            kappa_i.push_back(ojson{{"i", i},
                                    {"empirical", frac(emp.kappa_i[i])},
                                    {"formula", frac(formula.kappa_i[i])},
                                    {"equal", eq}});
        }
        const bool gram_ok = gram_check(gram, formula, scheme);
        report["kappa"] = ojson{{"empirical", frac(emp.kappa)},
                                {"formula", frac(formula.kappa)},
                                {"equal", emp.kappa == formula.kappa}};
        report["kappa_i"] = kappa_i;
        report["gram_constant_on_relations"] = emp.constant;
        report["gram_check"] = gram_ok;
        passed = passed && kappa_ok && gram_ok;

        if (p.n_at_least_2k()) {
            std::vector<Rational> mus;
            std::vector<Integer> mults;
            ojson mu = ojson::array();
            bool mu_ok = true;
            Rational trace(0);
            for (unsigned r = 0; r <= p.k(); ++r) {
                Rational closed = mu_eigenvalue(p, r, formula.kappa);
                Rational spectral = mu_from_scheme(p, r, formula);
                Integer mult = eigenspace_multiplicity(p.n(), r, p.q());
                mu_ok = mu_ok && closed == spectral;
                trace += Rational(mult) * closed;
                mu.push_back(ojson{{"r", r},
                                   {"closed_form", frac(closed)},
                                   {"from_scheme", frac(spectral)},
                                   {"multiplicity", mult.get_str()}});
                mus.push_back(closed);
                mults.push_back(mult);
            }
            auto groups = grouped_rank_check(gram, mus, mults);
            bool groups_ok = std::all_of(groups.begin(), groups.end(), [](const EigenGroup& g) { return g.ok; });
            Rational diag(0);
            for (std::size_t x = 0; x < gram.rows(); ++x)
                diag += gram(x, x);
            Rational expected_trace = Rational(static_cast<unsigned long>(space.blocks().size())) * formula.kappa;
            bool trace_ok = trace == expected_trace && diag == expected_trace;
            report["mu"] = mu;
            report["spectrum_groups"] = groups_json(groups);
            report["trace"] = ojson{{"eigenvalue_sum", frac(trace)},
                                    {"diagonal_sum", frac(diag)},
                                    {"expected", frac(expected_trace)},
                                    {"ok", trace_ok}};
            passed = passed && mu_ok && groups_ok && trace_ok;
        }
    }

    ojson inter = ojson::array();
    for (unsigned i = 0; i < p.t(); ++i) {
        std::vector<std::uint64_t> seen;
        bool ok = true;
        Rational expected = intersect_count(p, i);
        for (const auto& d : got.designs) {
            auto obs = observe_intersections(d, space)[i];
            ok = ok && obs.ok;
            for (auto v : obs.observed)
                if (std::find(seen.begin(), seen.end(), v) == seen.end())
                    seen.push_back(v);
        }
        std::sort(seen.begin(), seen.end());
        inter.push_back(ojson{{"i", i}, {"expected", frac(expected)}, {"observed", seen}, {"ok", ok}});
        passed = passed && ok;
    }
    report["intersections"] = inter;
    report["rank"] = certificate_json(cert);
    passed = passed && cert.meets;
    report["dimension_formula"] = dim.get_str();
    report["passed"] = passed;
    return RunResult{passed, report.dump(2) + "\n"};
}

RunResult run_enumerate(const DimensionOptions& o, std::string& designs_file)
{
    ParamSet p(o.t, o.k, o.n, o.q);
    if (!p.admissible())
        throw Inadmissible(p.label() + ": " + p.inadmissibility_reason());
    DesignSpace space(p);
    Collected got = collect(space, o, o.count);
    std::vector<std::vector<Subspace>> blocks;
    std::size_t verified = 0;
    for (const auto& d : got.designs) {
        if (verify_design(d, space).ok)
            ++verified;
        blocks.push_back(design_subspaces(d, space));
    }
    designs_file = got.designs.empty() ? std::string("[]\n") : write_design_file(p, blocks);
    const bool passed = verified == got.designs.size() && !got.partial;
    ojson report{{"command", "enumerate"},
                 {"params", params_json(p)},
                 {"mode", o.sample ? "sample" : "enumerate"},
                 {"designs", got.designs.size()},
                 {"verified_designs", verified},
                 {"partial", got.partial},
                 {"passed", passed}};
    if (o.sample)
        report["seed"] = o.seed;
    return RunResult{passed, report.dump(2) + "\n"};
}

RunResult run_verify_design(const std::string& text)
{
    DesignFile file = parse_design_file(text);
    ojson results = ojson::array();
    bool passed = true;
    for (std::size_t i = 0; i < file.designs.size(); ++i) {
        DesignVerdict v = verify_design(file.designs[i], file.params, file.lambda);
        ojson r{{"index", i}, {"blocks", file.designs[i].size()}, {"ok", v.ok}, {"message", v.message}};
        if (v.witness) {
            r["witness"] = subspace_json(*v.witness);
            r["witness_coverage"] = v.witness_coverage;
        }
        results.push_back(std::move(r));
        passed = passed && v.ok;
    }
    ojson report{{"command", "verify-design"},
                 {"params", params_json(file.params)},
                 {"lambda", file.lambda},
                 {"designs", results},
                 {"passed", passed}};
    return RunResult{passed, report.dump(2) + "\n"};
}

} // namespace qsteiner
