// The hopfcyc command line: verify | sayd | homology | emit-example.
// Exit codes: 0 ok, 1 axiom or verification failure, 2 Galois failure,
// 3 resource limit, 4 parse error.

#pragma once

#include "hopfcyc/homology.hpp"
#include "hopfcyc/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iomanip>
#include <ostream>

namespace hopfcyc::cli {

using io::json;

enum Exit : int { ok = 0, axiom_failure = 1, galois_failure = 2, resource_limit = 3, parse_error = 4 };

struct Settings {
    std::string path;
    std::optional<std::size_t> cap;
    std::optional<std::size_t> ambient_bound;
    std::string object = "all";
    bool json_output = false;
    bool timings = false;
};

namespace detail {

inline json check_json(const Check& c)
{
    json out = json::object();
    out["name"] = c.name;
    out["passed"] = c.passed;
    if (!c.witness.empty()) out["witness"] = c.witness;
    return out;
}

inline json report_json(const VerificationReport& r)
{
    json out = json::object();
    out["subject"] = r.subject;
    out["ok"] = r.ok();
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(check_json(c));
    out["checks"] = checks;
    return out;
}

inline json sizes_json(const std::vector<std::size_t>& v)
{
    json out = json::array();
    for (auto x : v) out.push_back(x);
    return out;
}

inline std::string join(const std::vector<std::size_t>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

/// Accumulates the machine report and the human text side by side.
struct Run {
    json report = json::object();
    std::ostringstream text;
    bool timings = false;

    void line(const std::string& s) { text << s << '\n'; }

    void verdict(const VerificationReport& r)
    {
        if (r.ok()) {
            line("  ok    " + r.subject + " (" + std::to_string(r.checks.size()) + " checks)");
            return;
        }
        const Check* f = r.first_failure();
        line("  FAIL  " + r.subject + ": " + f->name + (f->witness.empty() ? "" : " [" + f->witness + "]"));
    }

    void verdict(const Check& c, const std::string& subject)
    {
        VerificationReport r{subject, {c}};
        verdict(r);
    }

    template <class F>
    auto timed(const std::string& what, F&& f)
    {
        const auto t0 = std::chrono::steady_clock::now();
        auto result = f();
        if (timings) {
            const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            std::ostringstream o;
            o << "  time  " << what << " " << std::fixed << std::setprecision(3) << s << " s";
            line(o.str());
        }
        return result;
    }
};

/// Outcome of checking every structure in a bundle, plus the Galois verdict.
struct Verified {
    bool ok = true;
    std::optional<GaloisDatum> datum;
    std::optional<ModuleCoalgebra> coalgebra;
    SparseVec grouplike;
    std::optional<GaloisConditionFailed> galois_failure;
};

inline Verified verify_bundle(const io::Bundle& b, Run& run)
{
    Verified v;
    json reports = json::array();
    auto record = [&](const VerificationReport& r) {
        run.verdict(r);
        reports.push_back(report_json(r));
        v.ok = v.ok && r.ok();
        return r.ok();
    };
    auto fail = [&](const std::string& subject, const std::string& name, const std::string& witness) {
        record(VerificationReport{subject, {Check{name, false, witness}}});
    };
    run.line("verification");
    if (record(verify_hopf(b.hopf)) && record(verify_comodule_algebra(b.comodule_algebra))) {
        try {
            auto [c, e] = io::coalgebra_of(b);
            v.coalgebra = c;
            v.grouplike = e;
        } catch (const NotCoidealRightIdeal& e) {
            fail("coideal", e.what(), e.witness);
        }
        if (v.coalgebra && record(verify_module_coalgebra(*v.coalgebra))) {
            try {
                v.datum = make_galois_datum(b.comodule_algebra, *v.coalgebra, v.grouplike);
            } catch (const NotGroupLike& e) {
                fail("group-like", e.what(), "");
            } catch (const GaloisConditionFailed& e) {
                v.galois_failure = e;
            }
            if (v.datum) record(verify_galois(*v.datum));
        }
    }
    run.report["verification"] = reports;
    if (v.ok) {
        json g = json::object();
        g["galois"] = v.datum.has_value();
        if (v.datum) {
            g["hopf_galois"] = v.datum->hopf_galois();
            g["dim_B"] = v.datum->B.rank();
            run.line(std::string("galois  yes") + (v.datum->hopf_galois() ? " (Hopf-Galois)" : "") + ", dim B = " + std::to_string(v.datum->B.rank()));
        } else if (v.galois_failure) {
            const auto& e = *v.galois_failure;
            g["rank"] = e.rank;
            g["source_dim"] = e.source_dim;
            g["target_dim"] = e.target_dim;
            g["rank_deficit"] = e.target_dim - e.rank;
            run.line("galois  no: " + std::string(e.what()) + ", deficit " + std::to_string(e.target_dim - e.rank));
        }
        run.report["galois"] = g;
    }
    return v;
}


inline int cmd_sayd(const io::Bundle& b, const Verified& v, Run& run)
{
    run.line("sayd");
    const SaydModule m = run.timed("build M", [&] { return build_M(b.comodule_algebra); });
    const auto r = verify_sayd(m);
    run.line("  dim M = " + std::to_string(m.dim()));
    run.verdict(r);
    json out = json::object();
    out["dim_M"] = m.dim();
    out["report"] = report_json(r);
    bool good = r.ok();

    const Check pre = stability_before_quotient(b.comodule_algebra);
    run.line(std::string("  info  stability on H (x) A before the quotient: ") + (pre.passed ? "holds" : "fails"));
    out["stability_before_quotient"] = pre.passed;

    if (auto x = examples::decode_gset(b.comodule_algebra)) {
        const auto pairs = examples::brylinski_oracle(*x);
        const bool match = pairs.dimension == m.dim();
        run.line("  fixed pairs (g, x) with x.g = x: " + std::to_string(pairs.dimension) + (match ? ", matches dim M" : ", MISMATCH with dim M"));
        json bry = json::object();
        bry["fixed_pairs"] = pairs.dimension;
        bry["match"] = match;
        out["brylinski"] = bry;
        good = good && match;
    }
    if (v.datum && v.datum->hopf_galois()) {
        const auto cmp = run.timed("comparison with A/[A,B]", [&] { return jara_stefan_compare(*v.datum); });
        run.verdict(cmp.report);
        out["jara_stefan"] = report_json(cmp.report);
        good = good && cmp.report.ok();
    }
    run.report["sayd"] = out;
    return good ? ok : axiom_failure;
}

inline json homology_json(const HomologyReport& h, const CyclicObject& x)
{
    json out = json::object();
    out["object"] = h.name;
    std::vector<std::size_t> dims;
    for (std::size_t n = 0; n <= x.cap; ++n) dims.push_back(x.dim(n));
    out["dims"] = sizes_json(dims);
    out["hh"] = sizes_json(h.hh);
    out["hc"] = sizes_json(h.hc);
    out["hp_stabilized"] = h.hp_stabilized;
    if (h.hp_stabilized) {
        out["hp_even"] = *h.hp_even;
        out["hp_odd"] = *h.hp_odd;
    }
    return out;
}

inline void print_homology(Run& run, const HomologyReport& h, const CyclicObject& x)
{
    std::vector<std::size_t> dims;
    for (std::size_t n = 0; n <= x.cap; ++n) dims.push_back(x.dim(n));
    run.line("  " + h.name);
    run.line("    dims  " + join(dims));
    run.line("    HH    " + join(h.hh));
    run.line("    HC    " + join(h.hc));
    run.line("    HP    " + (h.hp_stabilized ? std::to_string(*h.hp_even) + " even, " + std::to_string(*h.hp_odd) + " odd" : std::string("not stabilized by the cap")));
}

inline bool same_tables(const HomologyReport& a, const HomologyReport& b)
{
    return a.hh == b.hh && a.hc == b.hc && a.hp_stabilized == b.hp_stabilized && a.hp_even == b.hp_even && a.hp_odd == b.hp_odd;
}

/// All four objects, the isomorphisms between them, and equality of the Betti tables.
inline bool compare_all(const GaloisDatum& g, const io::Bundle& b, const BuildOptions& opt, Run& run,
                        const std::function<void(const CyclicObject&)>& add, const std::vector<HomologyReport>& tables, json& out)
{
    const CyclicObject z = run.timed("build Z", [&] { return build_Z(g, opt); });
    const CyclicObject ys = run.timed("build Y (Sweedler coring)", [&] { return build_Y_sweedler(g, opt); });
    const CyclicObject yg = run.timed("build Y (Galois coring)", [&] { return build_Y_galois(g, opt); });
    const SaydModule m = build_M(b.comodule_algebra);
    const CyclicObject yh = run.timed("build Y (Hopf module)", [&] { return build_Y_hopf(g.C, m, opt); });
    for (const auto* x : {&z, &ys, &yg, &yh}) add(*x);

    VerificationReport cmp{"comparison", {}};
    auto pair = [&](const CyclicMap& f, const CyclicMap& finv, const CyclicObject& src, const CyclicObject& tgt) {
        cmp.add(mutually_inverse(f, finv));
        cmp.absorb(verify_cyclic_map(f, src, tgt), f.name + ": ");
    };
    run.timed("maps Z <-> Y (Sweedler coring)", [&] {
        pair(iso_Z_to_Y_sweedler(g, z, ys, opt), iso_Y_sweedler_to_Z(g, ys, z, opt), z, ys);
        return 0;
    });
    run.timed("maps Y (Sweedler) <-> Y (Galois)", [&] {
        pair(iso_sweedler_to_galois(g, ys, yg, opt), iso_galois_to_sweedler(g, yg, ys, opt), ys, yg);
        return 0;
    });
    run.timed("maps Phi, Psi", [&] {
        pair(build_phi(g, m, yg, yh, opt), build_psi(g, m, yh, yg, opt), yg, yh);
        return 0;
    });
    bool agree = true;
    for (const auto& t : tables) agree = agree && same_tables(t, tables.front());
    cmp.add(Check{"Betti tables and HP agree across objects", agree, agree ? "" : "see per-object tables"});
    run.line("comparison");
    run.verdict(cmp);
    out["comparison"] = report_json(cmp);
    return cmp.ok();
}

inline int cmd_homology(const io::Bundle& b, const Verified& v, const Settings& s, Run& run)
{
    BuildOptions opt;
    opt.cap = s.cap.value_or(b.options.cap);
    const auto bound = s.ambient_bound ? s.ambient_bound : b.options.ambient_bound;
    if (opt.cap == 0) throw io::ParseError("options.cap", "the degree cap must be at least 1");
    if (opt.cap > 4 && !bound) throw ResourceLimit("degree cap " + std::to_string(opt.cap) + " > 4 needs an explicit --ambient-bound");
    if (bound) opt.ambient_bound = *bound;

    json out = json::object();
    out["cap"] = opt.cap;
    out["ambient_bound"] = opt.ambient_bound;
    out["object"] = s.object;
    run.line("homology (cap " + std::to_string(opt.cap) + ", ambient bound " + std::to_string(opt.ambient_bound) + ")");

    if (!v.datum && s.object != "Z") throw *v.galois_failure;

    json objects = json::array();
    std::vector<HomologyReport> tables;
    bool good = true;
    auto add = [&](const CyclicObject& x) {
        const auto laws = run.timed("cyclic identities " + x.name, [&] { return verify_cyclic(x); });
        run.verdict(laws);
        good = good && laws.ok();
        auto h = run.timed("homology " + x.name, [&] { return homology_report(x); });
        print_homology(run, h, x);
        json j = homology_json(h, x);
        j["cyclic_identities"] = report_json(laws);
        objects.push_back(j);
        tables.push_back(std::move(h));
    };

    if (s.object == "Z") {
        CyclicObject z = v.datum ? run.timed("build Z", [&] { return build_Z(*v.datum, opt); })
                                 : run.timed("build Z", [&] {
                                       const Subspace bsub = invariants(b.comodule_algebra, induce_coaction(b.comodule_algebra, *v.coalgebra, v.grouplike));
                                       return build_Z(b.comodule_algebra.algebra, bsub, opt);
                                   });
        add(z);
    } else if (s.object == "Ysweedler") {
        add(run.timed("build Y (Sweedler coring)", [&] { return build_Y_sweedler(*v.datum, opt); }));
    } else if (s.object == "Ygalois") {
        add(run.timed("build Y (Galois coring)", [&] { return build_Y_galois(*v.datum, opt); }));
    } else if (s.object == "Yhopf") {
        const SaydModule m = build_M(b.comodule_algebra);
        add(run.timed("build Y (Hopf module)", [&] { return build_Y_hopf(v.datum->C, m, opt); }));
    } else {
        good = compare_all(*v.datum, b, opt, run, add, tables, out) && good;
    }
    out["objects"] = objects;
    run.report["homology"] = out;
    return good ? ok : axiom_failure;
}


inline int execute(const std::string& command, const Settings& s, Run& run)
{
    run.report["command"] = command;
    run.timings = s.timings;
    int code = ok;
    try {
        const io::Bundle b = io::load_bundle(s.path);
        run.report["bundle"] = b.name;
        if (!b.name.empty()) run.line("bundle " + b.name);
        const Verified v = verify_bundle(b, run);
        if (!v.ok) {
            code = axiom_failure;
        } else if (command == "sayd") {
            code = cmd_sayd(b, v, run);
        } else if (command == "homology") {
            code = cmd_homology(b, v, s, run);
        }
    } catch (const io::ParseError& e) {
        run.report["error"] = std::string("parse error: ") + e.what();
        code = parse_error;
    } catch (const DimensionMismatch& e) {
        run.report["error"] = std::string("dimension mismatch: ") + e.what();
        code = parse_error;
    } catch (const GaloisConditionFailed& e) {
        run.report["error"] = std::string("Galois condition failed: ") + e.what();
        run.report["rank_deficit"] = e.target_dim - e.rank;
        code = galois_failure;
    } catch (const ResourceLimit& e) {
        run.report["error"] = std::string("resource limit: ") + e.what();
        code = resource_limit;
    } catch (const Error& e) {
        run.report["error"] = std::string("verification failure: ") + e.what();
        code = axiom_failure;
    }
    if (run.report.contains("error")) run.line(run.report["error"].get<std::string>());
    run.report["exit_code"] = code;
    run.line(code == ok ? "result ok" : "result exit " + std::to_string(code));
    return code;
}

} // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact cyclic homology of Hopf-Galois data over the rationals", "hopfcyc"};
    app.require_subcommand(1);
    Settings s;
    std::string example;
    auto add_common = [&](CLI::App* sub, bool homology) {
        sub->add_option("bundle", s.path, "bundle file (JSON)")->required();
        sub->add_flag("--json", s.json_output, "print the machine-readable report");
        sub->add_flag("--timings", s.timings, "include wall-clock timings in the text output");
        if (homology) {
            sub->add_option("--cap", s.cap, "highest degree built (default from the bundle, else 3)");
            sub->add_option("--ambient-bound", s.ambient_bound, "largest staged tensor space allowed");
            sub->add_option("--object", s.object, "which cyclic object")->check(CLI::IsMember({"Z", "Ysweedler", "Ygalois", "Yhopf", "all"}));
        }
    };
    add_common(app.add_subcommand("verify", "check every axiom and report the Galois verdict"), false);
    add_common(app.add_subcommand("sayd", "build M and check the SAYD laws and comparisons"), false);
    add_common(app.add_subcommand("homology", "build cyclic objects and compute HH, HC, HP"), true);
    auto* emit = app.add_subcommand("emit-example", "print a shipped example bundle");
    emit->add_option("name", example, "example name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : parse_error;
    }

    if (emit->parsed()) {
        try {
            out << io::bundle_to_json(io::example_bundle(example)).dump(2) << '\n';
            return ok;
        } catch (const io::ParseError& e) {
            err << e.what() << "; known examples:";
            for (const auto& n : io::example_names()) err << ' ' << n;
            err << '\n';
            return parse_error;
        }
    }
    const std::string command = app.get_subcommands().front()->get_name();
    detail::Run r;
    const int code = detail::execute(command, s, r);
    if (s.json_output) {
        out << r.report.dump(2) << '\n';
    } else {
        out << r.text.str();
    }
    return code;
}

} // namespace hopfcyc::cli
