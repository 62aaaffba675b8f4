// JSON input bundles: a Hopf algebra, a comodule algebra and a coideal (or a
// module coalgebra with a group-like), plus run options.
//
//   vectors    [[i, "c"], ...]
//   matrices   [[row, col, "c"], ...]
//   mult       [[i, j, k, "c"], ...]   e_i e_j has coefficient c on e_k
//   comult     [[i, j, k, "c"], ...]   Delta(e_i) has coefficient c on e_j (x) e_k
//   coaction   [[a, b, h, "c"], ...]   rho(e_a) has coefficient c on e_b (x) h_h
//   coalgebra_action [[c, h, d, "c"], ...]   c . h has coefficient on c_d
//
// Rationals are strings "p/q" or "p"; plain JSON integers are accepted too.

#pragma once

#include "hopfcyc/examples.hpp"
#include "hopfcyc/galois.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace hopfcyc::io {

using json = nlohmann::ordered_json;

struct ParseError : Error {
    std::string section;
    ParseError(const std::string& section_, const std::string& what)
        : Error(section_.empty() ? what : section_ + ": " + what), section(section_)
    {
    }
};

struct Options {
    std::size_t cap = 3;
    std::optional<std::size_t> ambient_bound;
};

struct Bundle {
    std::string name;
    HopfAlgebra hopf;
    ComoduleAlgebra comodule_algebra;
    std::optional<Subspace> coideal;
    std::optional<ModuleCoalgebra> module_coalgebra;
    SparseVec grouplike;
    Options options;
};

namespace detail {

inline Rat parse_rat(const json& v, const std::string& where)
{
    if (v.is_number_integer()) return Rat(v.get<long>());
    if (!v.is_string()) throw ParseError(where, "expected a rational string");
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    auto is_int = [](const std::string& t) {
        std::size_t k = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (k == t.size()) return false;
        for (; k < t.size(); ++k) {
            if (t[k] < '0' || t[k] > '9') return false;
        }
        return true;
    };
    const std::string num = s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+') throw ParseError(where, "bad rational \"" + s + "\"");
    mpz_class n(num[0] == '+' ? num.substr(1) : num), d(den);
    if (d == 0) throw ParseError(where, "zero denominator in \"" + s + "\"");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

inline std::string rat_string(const Rat& r) { return r.get_str(); }

inline std::size_t parse_index(const json& v, std::size_t bound, const std::string& where)
{
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long>() >= 0)) {
        throw ParseError(where, "expected a nonnegative index");
    }
    const auto i = v.get<std::size_t>();
    if (i >= bound) throw DimensionMismatch(where + ": index " + std::to_string(i) + " out of range " + std::to_string(bound));
    return i;
}

inline const json& require(const json& obj, const std::string& key, const std::string& where)
{
    if (!obj.is_object()) throw ParseError(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where, "missing section \"" + key + "\"");
    return *it;
}

inline const json& require_array(const json& v, const std::string& where)
{
    if (!v.is_array()) throw ParseError(where, "expected an array");
    return v;
}

/// Reads entries of the form [i_0, ..., i_{k-1}, "c"] and returns (indices, value) pairs.
inline std::vector<std::pair<std::vector<std::size_t>, Rat>> read_entries(const json& v, const std::vector<std::size_t>& bounds,
                                                                          const std::string& where)
{
    std::vector<std::pair<std::vector<std::size_t>, Rat>> out;
    std::size_t row = 0;
    for (const auto& e : require_array(v, where)) {
        const std::string at = where + "[" + std::to_string(row++) + "]";
        if (!e.is_array() || e.size() != bounds.size() + 1) {
            throw ParseError(at, "expected " + std::to_string(bounds.size() + 1) + " fields");
        }
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < bounds.size(); ++k) idx.push_back(parse_index(e[k], bounds[k], at));
        out.emplace_back(std::move(idx), parse_rat(e[bounds.size()], at));
    }
    return out;
}

inline SparseVec read_vector(const json& v, std::size_t dim, const std::string& where)
{
    VecBuilder b;
    for (auto& [idx, c] : read_entries(v, {dim}, where)) b.add(idx[0], c);
    return b.take();
}

inline SparseMat read_matrix(const json& v, std::size_t rows, std::size_t cols, const std::string& where)
{
    std::vector<std::tuple<std::size_t, std::size_t, Rat>> t;
    for (auto& [idx, c] : read_entries(v, {rows, cols}, where)) t.emplace_back(idx[0], idx[1], c);
    return SparseMat::from_triples(rows, cols, t);
}

/// Products and coproducts are read from [i, j, k, c] quadruples.
inline SparseMat read_product(const json& v, std::size_t d, const std::string& where)
{
    std::vector<std::tuple<std::size_t, std::size_t, Rat>> t;
    for (auto& [idx, c] : read_entries(v, {d, d, d}, where)) t.emplace_back(idx[2], idx[0] * d + idx[1], c);
    return SparseMat::from_triples(d, d * d, t);
}

inline SparseMat read_coproduct(const json& v, std::size_t d, const std::string& where)
{
    std::vector<std::tuple<std::size_t, std::size_t, Rat>> t;
    for (auto& [idx, c] : read_entries(v, {d, d, d}, where)) t.emplace_back(idx[1] * d + idx[2], idx[0], c);
    return SparseMat::from_triples(d * d, d, t);
}

inline json write_vector(const SparseVec& v)
{
    json out = json::array();
    for (const auto& e : v) out.push_back(json::array({e.index, rat_string(e.value)}));
    return out;
}

inline json write_matrix(const SparseMat& m)
{
    json out = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
        for (const auto& e : m.column(c)) out.push_back(json::array({e.index, c, rat_string(e.value)}));
    }
    return out;
}

/// Column c*inner + i, row r written as [c, i, r, value].
inline json write_split_columns(const SparseMat& m, std::size_t inner)
{
    json out = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
        for (const auto& e : m.column(c)) out.push_back(json::array({c / inner, c % inner, e.index, rat_string(e.value)}));
    }
    return out;
}

/// Column c, row r*inner + i written as [c, r, i, value].
inline json write_split_rows(const SparseMat& m, std::size_t inner)
{
    json out = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
        for (const auto& e : m.column(c)) out.push_back(json::array({c, e.index / inner, e.index % inner, rat_string(e.value)}));
    }
    return out;
}

inline StructureConstantSpace read_space(const json& sec, const std::string& where, const std::string& stem)
{
    const json& d = require(sec, "dim", where);
    if (!d.is_number_integer() || d.get<long>() <= 0) throw ParseError(where + ".dim", "expected a positive integer");
    auto s = StructureConstantSpace::numbered(d.get<std::size_t>(), stem);
    if (auto it = sec.find("basis"); it != sec.end()) {
        if (!it->is_array()) throw ParseError(where + ".basis", "expected an array of names");
        if (it->size() != s.dim) throw DimensionMismatch(where + ".basis: " + std::to_string(it->size()) + " names for dim " + std::to_string(s.dim));
        for (std::size_t i = 0; i < s.dim; ++i) {
            if (!(*it)[i].is_string()) throw ParseError(where + ".basis", "expected an array of names");
            s.basis[i] = (*it)[i].get<std::string>();
        }
    }
    return s;
}

inline json write_space(const StructureConstantSpace& s)
{
    json out = json::object();
    out["dim"] = s.dim;
    out["basis"] = s.basis;
    return out;
}

inline Algebra read_algebra(const json& sec, const std::string& where, const std::string& stem)
{
    auto s = read_space(sec, where, stem);
    const std::size_t d = s.dim;
    Algebra a{s, read_product(require(sec, "mult", where), d, where + ".mult"), {}};
    a.unit = read_vector(require(sec, "unit", where), d, where + ".unit");
    return a;
}

inline Coalgebra read_coalgebra(const json& sec, const std::string& where, const StructureConstantSpace& s)
{
    const std::size_t d = s.dim;
    Coalgebra c{s, read_coproduct(require(sec, "comult", where), d, where + ".comult"),
                SparseMat::row_vector(d, read_vector(require(sec, "counit", where), d, where + ".counit")), {}};
    if (auto it = sec.find("grouplikes"); it != sec.end()) {
        std::size_t k = 0;
        for (const auto& g : require_array(*it, where + ".grouplikes")) {
            c.grouplikes.push_back(read_vector(g, d, where + ".grouplikes[" + std::to_string(k++) + "]"));
        }
    }
    return c;
}

inline HopfAlgebra read_hopf(const json& sec)
{
    const std::string w = "hopf";
    Algebra a = read_algebra(sec, w, "h");
    const std::size_t d = a.dim();
    Coalgebra c = read_coalgebra(sec, w, a.space);
    SparseMat s = read_matrix(require(sec, "antipode", w), d, d, w + ".antipode");
    SparseMat si = read_matrix(require(sec, "antipode_inv", w), d, d, w + ".antipode_inv");
    return HopfAlgebra{std::move(a), std::move(c), std::move(s), std::move(si)};
}

inline json write_hopf(const HopfAlgebra& h)
{
    json out = write_space(h.algebra.space);
    const std::size_t d = h.dim();
    out["mult"] = write_split_columns(h.algebra.mult, d);
    out["unit"] = write_vector(h.unit());
    out["comult"] = write_split_rows(h.coalgebra.comult, d);
    out["counit"] = write_vector(h.coalgebra.counit.transpose().column(0));
    if (!h.coalgebra.grouplikes.empty()) {
        json g = json::array();
        for (const auto& v : h.coalgebra.grouplikes) g.push_back(write_vector(v));
        out["grouplikes"] = g;
    }
    out["antipode"] = write_matrix(h.antipode);
    out["antipode_inv"] = write_matrix(h.antipode_inv);
    return out;
}

} // namespace detail

inline Bundle bundle_from_json(const json& doc)
{
    using namespace detail;
    if (!doc.is_object()) throw ParseError("", "top level must be an object");
    Bundle b;
    if (auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) throw ParseError("name", "expected a string");
        b.name = it->get<std::string>();
    }
    b.hopf = read_hopf(require(doc, "hopf", ""));
    const std::size_t dh = b.hopf.dim();

    if (auto it = doc.find("comodule_algebra"); it != doc.end()) {
        const std::string w = "comodule_algebra";
        Algebra a = read_algebra(*it, w, "a");
        const std::size_t da = a.dim();
        std::vector<std::tuple<std::size_t, std::size_t, Rat>> t;
        for (auto& [idx, c] : read_entries(require(*it, "coaction", w), {da, da, dh}, w + ".coaction")) {
            t.emplace_back(idx[1] * dh + idx[2], idx[0], c);
        }
        b.comodule_algebra = ComoduleAlgebra{std::move(a), b.hopf, SparseMat::from_triples(da * dh, da, t)};
    } else {
        b.comodule_algebra = regular_comodule_algebra(b.hopf);
    }

    const bool has_coideal = doc.contains("coideal_basis"), has_mc = doc.contains("module_coalgebra");
    if (has_coideal && has_mc) throw ParseError("", "give either coideal_basis or module_coalgebra, not both");
    if (has_coideal) {
        std::vector<SparseVec> vs;
        std::size_t k = 0;
        for (const auto& v : require_array(doc["coideal_basis"], "coideal_basis")) {
            vs.push_back(read_vector(v, dh, "coideal_basis[" + std::to_string(k++) + "]"));
        }
        b.coideal = Subspace::span(dh, vs);
    }
    if (has_mc) {
        const json& sec = doc["module_coalgebra"];
        const std::string w = "module_coalgebra";
        auto s = read_space(sec, w, "c");
        const std::size_t dc = s.dim;
        Coalgebra c = read_coalgebra(sec, w, s);
        std::vector<std::tuple<std::size_t, std::size_t, Rat>> t;
        for (auto& [idx, v] : read_entries(require(sec, "coalgebra_action", w), {dc, dh, dc}, w + ".coalgebra_action")) {
            t.emplace_back(idx[2], idx[0] * dh + idx[1], v);
        }
        b.module_coalgebra = ModuleCoalgebra{std::move(c), b.hopf, SparseMat::from_triples(dc, dc * dh, t)};
        b.grouplike = read_vector(require(sec, "grouplike", w), dc, w + ".grouplike");
    } else {
        b.grouplike = b.hopf.unit();
    }

    if (auto it = doc.find("options"); it != doc.end()) {
        if (!it->is_object()) throw ParseError("options", "expected an object");
        auto count = [&](const char* key) -> std::optional<std::size_t> {
            auto f = it->find(key);
            if (f == it->end()) return std::nullopt;
            if (!f->is_number_integer() || f->get<long>() < 0) throw ParseError(std::string("options.") + key, "expected a nonnegative integer");
            return f->get<std::size_t>();
        };
        if (auto c = count("cap")) b.options.cap = *c;
        b.options.ambient_bound = count("ambient_bound");
    }
    return b;
}

inline Bundle parse_bundle(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("", e.what());
    }
    return bundle_from_json(doc);
}

inline Bundle load_bundle(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_bundle(ss.str());
}

inline json bundle_to_json(const Bundle& b)
{
    using namespace detail;
    json out = json::object();
    if (!b.name.empty()) out["name"] = b.name;
    out["hopf"] = write_hopf(b.hopf);
    const std::size_t dh = b.hopf.dim();
    const auto& ca = b.comodule_algebra;
    json sec = write_space(ca.algebra.space);
    sec["mult"] = write_split_columns(ca.algebra.mult, ca.dim());
    sec["unit"] = write_vector(ca.algebra.unit);
    sec["coaction"] = write_split_rows(ca.coaction, dh);
    out["comodule_algebra"] = sec;
    if (b.coideal) {
        json basis = json::array();
        for (const auto& v : b.coideal->basis()) basis.push_back(write_vector(v));
        out["coideal_basis"] = basis;
    }
    if (b.module_coalgebra) {
        const auto& mc = *b.module_coalgebra;
        json m = write_space(mc.coalgebra.space);
        m["comult"] = write_split_rows(mc.coalgebra.comult, mc.dim());
        m["counit"] = write_vector(mc.coalgebra.counit.transpose().column(0));
        m["coalgebra_action"] = write_split_columns(mc.action, dh);
        m["grouplike"] = write_vector(b.grouplike);
        out["module_coalgebra"] = m;
    }
    json opt = json::object();
    opt["cap"] = b.options.cap;
    if (b.options.ambient_bound) opt["ambient_bound"] = *b.options.ambient_bound;
    out["options"] = opt;
    return out;
}

/// The module coalgebra C and group-like e a bundle describes.
inline std::pair<ModuleCoalgebra, SparseVec> coalgebra_of(const Bundle& b)
{
    if (b.coideal) {
        auto q = quotient_coalgebra(b.hopf, *b.coideal);
        return {std::move(q.C), std::move(q.e)};
    }
    if (b.module_coalgebra) return {*b.module_coalgebra, b.grouplike};
    return {regular_module_coalgebra(b.hopf), b.hopf.unit()};
}

inline GaloisDatum galois_datum(const Bundle& b)
{
    auto [c, e] = coalgebra_of(b);
    return make_galois_datum(b.comodule_algebra, c, e);
}


inline const std::vector<std::string>& example_names()
{
    static const std::vector<std::string> names{"kc2", "kc4", "ks3", "fc2", "fc4", "fs3", "h4", "fc4-c2", "s3-points", "s3-points-c2", "c4-points"};
    return names;
}

/// Bundles shipped under bundles/ whose coaction is Galois.
inline const std::vector<std::string>& galois_example_names()
{
    static const std::vector<std::string> names{"kc2", "kc4", "ks3", "fc2", "fc4", "fs3", "h4", "fc4-c2"};
    return names;
}

inline Bundle example_bundle(const std::string& name)
{
    namespace ex = hopfcyc::examples;
    auto regular = [&](HopfAlgebra h) {
        Bundle b;
        b.name = name;
        b.comodule_algebra = regular_comodule_algebra(h);
        b.grouplike = h.unit();
        b.hopf = std::move(h);
        return b;
    };
    auto gset = [&](const ex::GSet& x, std::optional<std::vector<std::size_t>> subgroup) {
        Bundle b;
        b.name = name;
        b.comodule_algebra = ex::gset_comodule_algebra(x);
        b.hopf = b.comodule_algebra.hopf;
        b.grouplike = b.hopf.unit();
        if (subgroup) b.coideal = ex::subgroup_quotient_coalgebra(x.group, *subgroup).I;
        return b;
    };
    if (name == "kc2") return regular(ex::group_algebra(ex::cyclic_group(2)));
    if (name == "kc4") return regular(ex::group_algebra(ex::cyclic_group(4)));
    if (name == "ks3") return regular(ex::group_algebra(ex::symmetric_group3()));
    if (name == "fc2") return regular(ex::function_hopf(ex::cyclic_group(2)));
    if (name == "fc4") return regular(ex::function_hopf(ex::cyclic_group(4)));
    if (name == "fs3") return regular(ex::function_hopf(ex::symmetric_group3()));
    if (name == "h4") return regular(ex::sweedler_h4());
    if (name == "fc4-c2") return gset(ex::right_regular(ex::cyclic_group(4)), std::vector<std::size_t>{0, 2});
    if (name == "s3-points") return gset(ex::s3_on_three_points(), std::nullopt);
    if (name == "s3-points-c2") return gset(ex::s3_on_three_points(), std::vector<std::size_t>{0, ex::s3_transposition01()});
    if (name == "c4-points") return gset(ex::c4_on_two_points(), std::nullopt);
    throw ParseError("", "unknown example \"" + name + "\"");
}

} // namespace hopfcyc::io
