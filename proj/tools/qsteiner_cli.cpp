// qsteiner: command line front end over the C API.
//
//   qsteiner identities --q 2,3 --max-n 8 --out rows.json
//   qsteiner scheme --n 4 --k 2 --q 2
//   qsteiner enumerate --t 1 --k 2 --n 4 --q 2 --out spreads.json
//   qsteiner dimension --t 1 --k 2 --n 4 --q 3 --sample --seed 7
//   qsteiner verify-design --designs spreads.json
//
// Exit status: 0 all checks passed, 1 a check failed, 2 invalid arguments,
// inadmissible parameters or unparsable input, 3 size guard, 4 i/o, 5 internal.

#include "qsteiner/qsteiner.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int exit_code(qs_status s)
{
    switch (s) {
    case QS_OK: return 0;
    case QS_ERR_CHECK_FAILED: return 1;
    case QS_ERR_INVALID_ARGUMENT:
    case QS_ERR_INADMISSIBLE:
    case QS_ERR_PARSE: return 2;
    case QS_ERR_GUARD: return 3;
    case QS_ERR_IO: return 4;
    case QS_ERR_INTERNAL: return 5;
    }
    return 5;
}

struct Owned {
    char* p = nullptr;
    ~Owned() { qs_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

int fail(qs_status s)
{
    std::cerr << "qsteiner: " << qs_status_name(s) << ": " << qs_last_error() << "\n";
    return exit_code(s);
}

// Writes `text` to `path`, or to stdout when path is empty.
bool emit(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text;
        return true;
    }
    std::ofstream out(path);
    out << text;
    out.close();
    if (!out) {
        std::cerr << "qsteiner: i/o error: cannot write " << path << "\n";
        return false;
    }
    return true;
}

// Checks failed but a report exists: keep it, then report the failure.
int finish(qs_status s, const Owned& report, const std::string& out)
{
    if (s != QS_OK && s != QS_ERR_CHECK_FAILED)
        return fail(s);
    if (!emit(out, report.str()))
        return exit_code(QS_ERR_IO);
    if (s == QS_ERR_CHECK_FAILED)
        return fail(s);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact checks for q-Steiner systems and the Grassmann scheme"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qs_version()));

    unsigned t = 1, k = 2, n = 4;
    unsigned long q = 2;
    std::vector<unsigned long> qs{2, 3, 4, 5, 7, 8, 9};
    long max_n = 10;
    std::uint64_t seed = 1;
    std::size_t count = 0;
    bool sample = false;
    std::string out, format = "json", designs;

    auto add_tkn = [&](CLI::App* c) {
        c->add_option("--t", t, "t, the dimension of covered subspaces")->check(CLI::PositiveNumber);
        c->add_option("--k", k, "k, the block dimension")->check(CLI::PositiveNumber);
        c->add_option("--n", n, "n, the ambient dimension")->check(CLI::PositiveNumber);
        c->add_option("--q", q, "field size, a prime power");
    };
    auto add_search = [&](CLI::App* c) {
        c->add_flag("--sample", sample, "sample systems instead of enumerating all");
        c->add_option("--seed", seed, "seed for --sample");
        c->add_option("--count", count, "number of sampled systems");
    };

    CLI::App* ids = app.add_subcommand("identities", "sweep the q-series identities");
    ids->add_option("--q", qs, "field sizes")->delimiter(',');
    ids->add_option("--max-n", max_n, "largest n in the sweep");
    ids->add_option("--out", out, "file for per-tuple rows");
    ids->add_option("--format", format, "row format")->check(CLI::IsMember({"json", "csv"}));

    CLI::App* scheme = app.add_subcommand("scheme", "verify the Grassmann scheme spectrum on Gr(n,k)");
    scheme->add_option("--n", n)->check(CLI::PositiveNumber);
    scheme->add_option("--k", k)->check(CLI::PositiveNumber);
    scheme->add_option("--q", q);
    scheme->add_option("--out", out, "report file (default stdout)");

    CLI::App* enumerate = app.add_subcommand("enumerate", "list systems S_q(t,k,n) as a design file");
    add_tkn(enumerate);
    add_search(enumerate);
    enumerate->add_option("--out", out, "design file (default stdout)");

    CLI::App* dimension = app.add_subcommand("dimension", "span of all systems: rank against the formula");
    add_tkn(dimension);
    add_search(dimension);
    dimension->add_option("--out", out, "report file (default stdout)");

    CLI::App* verify = app.add_subcommand("verify-design", "check a design file");
    verify->add_option("--designs", designs, "design file")->required();
    verify->add_option("--out", out, "report file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    nlohmann::json opts;
    Owned report;

    if (ids->parsed()) {
        opts = {{"q", qs}, {"max_n", max_n}, {"format", format}};
        qs_status s = qs_run_identities(opts.dump().c_str(), out.c_str(), &report.p);
        return finish(s, report, "");
    }
    if (scheme->parsed()) {
        opts = {{"n", n}, {"k", k}, {"q", q}};
        return finish(qs_run_scheme(opts.dump().c_str(), &report.p), report, out);
    }

    opts = {{"t", t}, {"k", k}, {"n", n}, {"q", q}, {"sample", sample}, {"seed", seed}, {"count", count}};
    if (enumerate->parsed()) {
        Owned file;
        qs_status s = qs_run_enumerate(opts.dump().c_str(), &file.p, &report.p);
        if (s != QS_OK && s != QS_ERR_CHECK_FAILED)
            return fail(s);
        if (!emit(out, file.str()))
            return exit_code(QS_ERR_IO);
        std::cerr << report.str();
        return s == QS_OK ? 0 : fail(s);
    }
    if (dimension->parsed())
        return finish(qs_run_dimension(opts.dump().c_str(), &report.p), report, out);

    std::ifstream in(designs);
    if (!in) {
        std::cerr << "qsteiner: i/o error: cannot read " << designs << "\n";
        return exit_code(QS_ERR_IO);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    qs_status s = qs_verify_design_text(buf.str().c_str(), &report.p);
    if (s == QS_ERR_CHECK_FAILED) {
        // Name the offending t-subspace on stderr as well.
        auto doc = nlohmann::json::parse(report.str());
        for (const auto& d : doc["designs"])
            if (d.contains("witness"))
                std::cerr << "design " << d["index"] << ": " << d["message"].get<std::string>() << "; witness "
                          << d["witness"].dump() << " lies in " << d["witness_coverage"] << " blocks\n";
    }
    return finish(s, report, out);
}
