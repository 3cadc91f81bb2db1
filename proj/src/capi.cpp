#include "qsteiner/qsteiner.h"

#include "qsteiner/design_io.hpp"
#include "qsteiner/error.hpp"
#include "qsteiner/pipeline.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>

using namespace qsteiner;
using nlohmann::json;

struct qs_params {
    ParamSet params;
};

struct qs_design_set {
    std::shared_ptr<const DesignSpace> space;
    std::vector<Design> designs;
};

namespace {

thread_local std::string last_error;

class IoError : public Error {
public:
    using Error::Error;
};

char* dup(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class F>
qs_status guarded(F&& f)
{
    try {
        last_error.clear();
        return f();
    } catch (const Inadmissible& e) {
        last_error = e.what();
        return QS_ERR_INADMISSIBLE;
    } catch (const InvalidArgument& e) {
        last_error = e.what();
        return QS_ERR_INVALID_ARGUMENT;
    } catch (const DimensionMismatch& e) {
        last_error = e.what();
        return QS_ERR_PARSE;
    } catch (const ParseError& e) {
        last_error = e.what();
        return QS_ERR_PARSE;
    } catch (const GuardExceeded& e) {
        last_error = e.what();
        return QS_ERR_GUARD;
    } catch (const IoError& e) {
        last_error = e.what();
        return QS_ERR_IO;
    } catch (const json::exception& e) {
        last_error = std::string("options: ") + e.what();
        return QS_ERR_PARSE;
    } catch (const std::exception& e) {
        last_error = e.what();
        return QS_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return QS_ERR_INTERNAL;
    }
}

qs_status require(bool cond, const char* what)
{
    if (!cond)
        throw InvalidArgument(what);
    return QS_OK;
}

json parse_options(const char* text)
{
    if (!text || !*text)
        return json::object();
    json o;
    try {
        o = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("options: ") + e.what());
    }
    if (!o.is_object())
        throw ParseError("options: expected a JSON object");
    return o;
}

DimensionOptions dimension_options(const json& o)
{
    DimensionOptions d;
    d.t = o.value("t", d.t);
    d.k = o.value("k", d.k);
    d.n = o.value("n", d.n);
    d.q = o.value("q", d.q);
    d.sample = o.value("sample", d.sample);
    d.seed = o.value("seed", d.seed);
    d.count = o.value("count", d.count);
    d.max_designs = o.value("max_designs", d.max_designs);
    d.node_budget = o.value("node_budget", d.node_budget);
    return d;
}

qs_status finish(const RunResult& r, char** report)
{
    *report = dup(r.report);
    if (!r.passed) {
        last_error = "one or more checks failed";
        return QS_ERR_CHECK_FAILED;
    }
    return QS_OK;
}

} // namespace

extern "C" {

const char* qs_version(void) { return "1.0.0"; }

const char* qs_last_error(void) { return last_error.c_str(); }

const char* qs_status_name(qs_status status)
{
    switch (status) {
    case QS_OK: return "ok";
    case QS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QS_ERR_INADMISSIBLE: return "inadmissible parameters";
    case QS_ERR_GUARD: return "size guard exceeded";
    case QS_ERR_PARSE: return "parse error";
    case QS_ERR_IO: return "i/o error";
    case QS_ERR_CHECK_FAILED: return "check failed";
    case QS_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void qs_string_free(char* s) { std::free(s); }

qs_status qs_gauss_binom(long n, long k, unsigned long q, char** out)
{
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = dup(gauss_binom(n, k, q).get_str());
        return QS_OK;
    });
}

qs_status qs_params_create(unsigned t, unsigned k, unsigned n, unsigned long q, qs_params** out)
{
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = new qs_params{ParamSet(t, k, n, q)};
        return QS_OK;
    });
}

void qs_params_destroy(qs_params* p) { delete p; }

qs_status qs_params_admissible(const qs_params* p, unsigned long lambda, int* admissible, char** reason)
{
    return guarded([&] {
        require(p && admissible, "null argument");
        *admissible = p->params.admissible(lambda) ? 1 : 0;
        if (reason)
            *reason = dup(p->params.inadmissibility_reason(lambda));
        return QS_OK;
    });
}

qs_status qs_dimension_formula(const qs_params* p, char** out)
{
    return guarded([&] {
        require(p && out, "null argument");
        *out = dup(dimension_formula(p->params).get_str());
        return QS_OK;
    });
}

qs_status qs_design_set_enumerate(const qs_params* p, size_t max_designs, qs_design_set** out)
{
    return guarded([&] {
        require(p && out, "null argument");
        auto space = std::make_shared<const DesignSpace>(p->params);
        auto designs = enumerate_steiner(*space, max_designs ? max_designs : 200'000);
        *out = new qs_design_set{space, std::move(designs)};
        return QS_OK;
    });
}

qs_status qs_design_set_sample(const qs_params* p, uint64_t seed, size_t count, qs_design_set** out)
{
    return guarded([&] {
        require(p && out, "null argument");
        if (!p->params.admissible())
            throw Inadmissible(p->params.label() + ": " +
                               p->params.inadmissibility_reason());
        auto space = std::make_shared<const DesignSpace>(p->params);
        SampleResult r = sample_steiner(*space, seed, count);
        *out = new qs_design_set{space, std::move(r.designs)};
        return QS_OK;
    });
}

void qs_design_set_destroy(qs_design_set* s) { delete s; }

size_t qs_design_set_size(const qs_design_set* s) { return s ? s->designs.size() : 0; }

qs_status qs_design_set_to_json(const qs_design_set* s, char** out)
{
    return guarded([&] {
        require(s && out, "null argument");
        std::vector<std::vector<Subspace>> blocks;
        for (const auto& d : s->designs)
            blocks.push_back(design_subspaces(d, *s->space));
        *out = dup(blocks.empty() ? std::string("[]\n") : write_design_file(s->space->params(), blocks));
        return QS_OK;
    });
}

qs_status qs_design_set_rank(const qs_design_set* s, size_t* rank)
{
    return guarded([&] {
        require(s && rank, "null argument");
        ExactMatrix u = incidence_matrix(s->designs, s->space->blocks().size());
        *rank = rank_exact(u);
        return QS_OK;
    });
}

qs_status qs_run_identities(const char* options_json, const char* rows_path, char** report)
{
    return guarded([&] {
        require(report != nullptr, "report is null");
        json o = parse_options(options_json);
        SweepConfig config;
        if (o.contains("q"))
            config.qs = o.at("q").get<std::vector<unsigned long>>();
        for (auto q : config.qs)
            require_prime_power(q);
        config.max_n = o.value("max_n", config.max_n);
        if (config.max_n < 0 || config.max_n > 16)
            throw InvalidArgument("max_n must lie in 0..16");
        std::string fmt = o.value("format", std::string("json"));
        if (fmt != "json" && fmt != "csv")
            throw InvalidArgument("format must be json or csv");
        std::ofstream file;
        std::ostream null_stream(nullptr);
        std::ostream* rows = &null_stream;
        if (rows_path && *rows_path) {
            file.open(rows_path);
            if (!file)
                throw IoError(std::string("cannot open ") + rows_path + " for writing");
            rows = &file;
        }
        RunResult r = run_identities(config, fmt == "csv" ? SweepFormat::csv : SweepFormat::json, *rows);
        if (file.is_open()) {
            file.close();
            if (!file)
                throw IoError(std::string("failed writing ") + rows_path);
        }
        return finish(r, report);
    });
}

qs_status qs_run_scheme(const char* options_json, char** report)
{
    return guarded([&] {
        require(report != nullptr, "report is null");
        json o = parse_options(options_json);
        return finish(run_scheme(o.value("n", 4u), o.value("k", 2u), o.value("q", 2ul)), report);
    });
}

qs_status qs_run_dimension(const char* options_json, char** report)
{
    return guarded([&] {
        require(report != nullptr, "report is null");
        return finish(run_dimension(dimension_options(parse_options(options_json))), report);
    });
}

qs_status qs_run_enumerate(const char* options_json, char** designs, char** report)
{
    return guarded([&] {
        require(designs && report, "null argument");
        std::string file;
        RunResult r = run_enumerate(dimension_options(parse_options(options_json)), file);
        *designs = dup(file);
        return finish(r, report);
    });
}

qs_status qs_verify_design_text(const char* design_file_text, char** report)
{
    return guarded([&] {
        require(design_file_text && report, "null argument");
        return finish(run_verify_design(design_file_text), report);
    });
}

} // extern "C"
