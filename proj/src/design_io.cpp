#include "qsteiner/design_io.hpp"

#include "qsteiner/error.hpp"

#include <json.hpp>

#include <optional>

namespace qsteiner {

using nlohmann::json;

namespace {

unsigned long require_uint(const json& obj, const char* key)
{
    if (!obj.contains(key))
        throw ParseError(std::string("design file: missing key '") + key + "'");
    const json& v = obj.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw ParseError(std::string("design file: '") + key + "' must be a nonnegative integer");
    return v.get<unsigned long>();
}

Subspace parse_block(const json& m, const ParamSet& p, const FieldSpec& field, std::size_t index)
{
    const std::string where = "design file: block " + std::to_string(index);
    if (!m.is_array())
        throw ParseError(where + " is not a matrix");
    if (m.size() != p.k())
        throw DimensionMismatch(where + " has " + std::to_string(m.size()) + " rows, expected k = " +
                                std::to_string(p.k()));
    std::vector<Elem> rows;
    rows.reserve(static_cast<std::size_t>(p.k()) * p.n());
    for (const json& row : m) {
        if (!row.is_array())
            throw ParseError(where + " has a row that is not an array");
        if (row.size() != p.n())
            throw DimensionMismatch(where + " has a row of length " + std::to_string(row.size()) +
                                    ", expected n = " + std::to_string(p.n()));
        for (const json& e : row) {
            if (!e.is_number_integer())
                throw ParseError(where + " has a non-integer entry");
            long long v = e.get<long long>();
            if (v < 0 || v >= static_cast<long long>(p.q()))
                throw ParseError(where + " has entry " + std::to_string(v) + " outside 0.." +
                                 std::to_string(p.q() - 1));
            rows.push_back(static_cast<Elem>(v));
        }
    }
    Subspace s = span_of(rows, p.k(), p.n(), field);
    if (s.dim != p.k())
        throw DimensionMismatch(where + " has rank " + std::to_string(s.dim) + ", expected k = " +
                                std::to_string(p.k()));
    return s;
}

} // namespace

DesignFile parse_design_file(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("design file: ") + e.what());
    }
    std::vector<json> objects;
    if (doc.is_array()) {
        for (const json& o : doc)
            objects.push_back(o);
        if (objects.empty())
            throw ParseError("design file: empty array");
    } else {
        objects.push_back(doc);
    }

    std::optional<DesignFile> file;
    for (const json& o : objects) {
        if (!o.is_object())
            throw ParseError("design file: expected an object with keys q, n, k, t, blocks");
        ParamSet p(static_cast<unsigned>(require_uint(o, "t")), static_cast<unsigned>(require_uint(o, "k")),
                   static_cast<unsigned>(require_uint(o, "n")), require_uint(o, "q"));
        unsigned long lambda = o.contains("lambda") ? require_uint(o, "lambda") : 1;
        if (!file) {
            file = DesignFile{p, lambda, {}};
        } else if (!(file->params == p) || file->lambda != lambda) {
            throw ParseError("design file: all designs must share q, n, k, t and lambda");
        }
        if (!o.contains("blocks") || !o.at("blocks").is_array())
            throw ParseError("design file: missing 'blocks' array");
        auto field = p.field();
        std::vector<Subspace> blocks;
        std::size_t index = 0;
        for (const json& m : o.at("blocks"))
            blocks.push_back(parse_block(m, p, *field, index++));
        file->designs.push_back(std::move(blocks));
    }
    return std::move(*file);
}

std::string write_design_file(const ParamSet& params, const std::vector<std::vector<Subspace>>& designs,
                              unsigned long lambda)
{
    auto one = [&](const std::vector<Subspace>& blocks) {
        json o;
        o["q"] = params.q();
        o["n"] = params.n();
        o["k"] = params.k();
        o["t"] = params.t();
        if (lambda != 1)
            o["lambda"] = lambda;
        json bl = json::array();
        for (const Subspace& s : blocks) {
            json m = json::array();
            for (unsigned r = 0; r < s.dim; ++r) {
                json row = json::array();
                for (unsigned c = 0; c < s.ambient_n; ++c)
                    row.push_back(static_cast<unsigned>(s.at(r, c)));
                m.push_back(std::move(row));
            }
            bl.push_back(std::move(m));
        }
        o["blocks"] = std::move(bl);
        return o;
    };
    json doc;
    if (designs.size() == 1) {
        doc = one(designs[0]);
    } else {
        doc = json::array();
        for (const auto& d : designs)
            doc.push_back(one(d));
    }
    return doc.dump() + "\n";
}

} // namespace qsteiner
