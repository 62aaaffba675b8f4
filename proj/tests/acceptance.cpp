// Acceptance run: one PASS/FAIL line per criterion, with wall-clock time against its limit.

#include "hopfcyc/cli.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace hopfcyc;
namespace ex = hopfcyc::examples;

namespace {

const std::string bundle_dir = HOPFCYC_BUNDLE_DIR;

io::Bundle shipped(const std::string& name) { return io::load_bundle(bundle_dir + "/" + name + ".json"); }

std::string failure(const VerificationReport& r)
{
    const Check* f = r.first_failure();
    return f ? r.subject + ": " + f->name + (f->witness.empty() ? "" : " [" + f->witness + "]") : "";
}

std::string list(const std::vector<std::size_t>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

/// Items of one criterion; `per_item` applies the limit to each item, otherwise to the sum.
class Criterion {
public:
    Criterion(int id, std::string title, double limit, bool per_item) : id_(id), title_(std::move(title)), limit_(limit), per_item_(per_item) {}

    void item(const std::string& name, const std::function<std::string()>& body)
    {
        const auto t0 = std::chrono::steady_clock::now();
        std::string why;
        try {
            why = body();
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        total_ += dt;
        worst_ = std::max(worst_, dt);
        ++count_;
        if (!why.empty()) notes_.push_back(name + ": " + why);
        if (per_item_ && dt > limit_) notes_.push_back(name + " took " + seconds(dt));
    }

    void info(std::string s) { info_.push_back(std::move(s)); }

    bool finish() const
    {
        std::vector<std::string> notes = notes_;
        if (!per_item_ && total_ > limit_) notes.push_back("total " + seconds(total_));
        const bool pass = notes.empty() && count_ > 0;
        std::string line = (pass ? "PASS  " : "FAIL  ") + std::to_string(id_) + "  " + title_ + "  (" + std::to_string(count_) + " items, ";
        line += per_item_ ? "worst " + seconds(worst_) + ", limit " + seconds(limit_) + " each)" : "total " + seconds(total_) + ", limit " + seconds(limit_) + ")";
        std::cout << line << '\n';
        for (const auto& n : notes) std::cout << "        " << n << '\n';
        for (const auto& n : info_) std::cout << "        " << n << '\n';
        std::cout.flush();
        return pass;
    }

private:
    static std::string seconds(double s)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f s", s);
        return buf;
    }

    int id_;
    std::string title_;
    double limit_;
    bool per_item_;
    double total_ = 0, worst_ = 0;
    std::size_t count_ = 0;
    std::vector<std::string> notes_, info_;
};

/// The four objects of a Galois bundle at cap 3.
struct Objects {
    GaloisDatum g;
    SaydModule m;
    CyclicObject z, ys, yg, yh;
};

Objects build_all(const io::Bundle& b)
{
    BuildOptions opt;
    GaloisDatum g = io::galois_datum(b);
    SaydModule m = build_M(b.comodule_algebra);
    CyclicObject z = build_Z(g, opt), ys = build_Y_sweedler(g, opt), yg = build_Y_galois(g, opt), yh = build_Y_hopf(g.C, m, opt);
    return Objects{std::move(g), std::move(m), std::move(z), std::move(ys), std::move(yg), std::move(yh)};
}

} // namespace

int main()
{
    bool all = true;

    {
        Criterion c(1, "axiom suites for the shipped Hopf algebras", 1.0, true);
        for (const char* name : {"kc2", "kc4", "ks3", "fc2", "fc4", "fs3", "h4"}) {
            c.item(name, [&] {
                const auto b = shipped(name);
                for (const auto& r : {verify_hopf(b.hopf), verify_comodule_algebra(b.comodule_algebra), verify_module_coalgebra(io::coalgebra_of(b).first)}) {
                    if (!r.ok()) return failure(r);
                }
                return std::string();
            });
        }
        all = c.finish() && all;
    }

    {
        Criterion c(2, "M is stable anti-Yetter-Drinfeld; stability fails before the quotient", 5.0, true);
        for (const auto& name : io::example_names()) {
            c.item(name, [&] {
                const auto b = shipped(name);
                const auto r = verify_sayd(build_M(b.comodule_algebra));
                if (!r.ok()) return failure(r);
                if (stability_before_quotient(b.comodule_algebra).passed) return std::string("stability already holds on H (x) A");
                return std::string();
            });
        }
        all = c.finish() && all;
    }

    {
        Criterion c(3, "dim M equals the number of fixed pairs (g, x)", 5.0, false);
        const std::vector<std::pair<ex::GSet, std::size_t>> cases{{ex::s3_on_three_points(), 6},
                                                                   {ex::right_regular(ex::cyclic_group(4)), 4},
                                                                   {ex::c4_on_two_points(), 4},
                                                                   {ex::trivial_gset(ex::symmetric_group3()), 6}};
        for (const auto& [x, expected] : cases) {
            c.item(x.name, [&, x = x, expected = expected] {
                const std::size_t dm = build_M(ex::gset_comodule_algebra(x)).dim(), pairs = ex::brylinski_oracle(x).dimension;
                if (dm != pairs || dm != expected) {
                    return "dim M " + std::to_string(dm) + ", fixed pairs " + std::to_string(pairs) + ", expected " + std::to_string(expected);
                }
                return std::string();
            });
        }
        all = c.finish() && all;
    }

    {
        Criterion c(4, "M -> A/[A,B] is bijective, H-linear and H-colinear", 5.0, true);
        for (const char* name : {"kc2", "kc4", "h4"}) {
            c.item(name, [&] {
                const auto cmp = jara_stefan_compare(io::galois_datum(shipped(name)));
                for (const char* check : {"bijective", "H-linear", "H-colinear"}) {
                    const Check* k = cmp.report.find(check);
                    if (!k || !k->passed) return std::string(check) + " failed";
                }
                return failure(cmp.report);
            });
        }
        all = c.finish() && all;
    }

    {
        Criterion c(5, "Phi and Psi are inverse cyclic maps in degrees <= 3", 60.0, true);
        for (const char* name : {"kc2", "fc4-c2"}) {
            c.item(name, [&] {
                const auto b = shipped(name);
                if (std::string(name) == "fc4-c2" && (!b.coideal || b.coideal->rank() == 0)) return std::string("expected a nonzero coideal");
                BuildOptions opt;
                const GaloisDatum g = io::galois_datum(b);
                const SaydModule m = build_M(b.comodule_algebra);
                const CyclicObject yg = build_Y_galois(g, opt), yh = build_Y_hopf(g.C, m, opt);
                const CyclicMap phi = build_phi(g, m, yg, yh, opt), psi = build_psi(g, m, yh, yg, opt);
                if (yg.cap < 3) return std::string("cap below 3");
                const Check inv = mutually_inverse(phi, psi);
                if (!inv.passed) return inv.name + " [" + inv.witness + "]";
                for (const auto& r : {verify_cyclic_map(phi, yg, yh), verify_cyclic_map(psi, yh, yg)}) {
                    if (!r.ok()) return failure(r);
                }
                return std::string();
            });
        }
        all = c.finish() && all;
    }

    {
        Criterion c(6, "cyclic identities for all four objects of every shipped Galois bundle", 60.0, false);
        for (const auto& name : io::galois_example_names()) {
            c.item(name, [&] {
                const Objects o = build_all(shipped(name));
                for (const auto* x : {&o.z, &o.ys, &o.yg, &o.yh}) {
                    const auto r = verify_cyclic(*x);
                    if (!r.find("t^{n+1} = id")) return std::string("missing the t^{n+1} check");
                    if (!r.ok()) return failure(r);
                }
                return std::string();
            });
        }
        all = c.finish() && all;
    }

    {
        Criterion c(7, "Betti tables of Z, Y (Sweedler), Y (Galois), Y (Hopf module) agree", 120.0, true);
        for (const char* name : {"kc2", "fc4-c2"}) {
            c.item(name, [&] {
                const Objects o = build_all(shipped(name));
                std::vector<HomologyReport> t;
                for (const auto* x : {&o.z, &o.ys, &o.yg, &o.yh}) t.push_back(homology_report(*x));
                for (const auto& h : t) {
                    if (h.hh != t[0].hh || h.hc != t[0].hc) return h.name + " HH " + list(h.hh) + " HC " + list(h.hc) + " vs " + list(t[0].hc);
                    if (h.hp_stabilized != t[0].hp_stabilized || h.hp_even != t[0].hp_even || h.hp_odd != t[0].hp_odd) return h.name + ": HP differs";
                }
                return std::string();
            });
        }
        all = c.finish() && all;
    }

    {
        Criterion c(8, "HH and HC against the dense oracle", 30.0, false);
        struct Case {
            std::string name;
            Algebra a;
            std::vector<std::size_t> hh, hc; // empty: not pinned
        };
        const std::vector<Case> cases{{"k", ex::ground_field(), {1, 0, 0}, {1, 0, 1}},
                                      {"k^3", ex::function_algebra(3), {3, 0, 0}, {3, 0, 3}},
                                      {"k[x]/x^2", ex::truncated_polynomial(2), {2, 1, 1}, {}}};
        for (const auto& k : cases) {
            c.item(k.name, [&] {
                const HomologyReport h = homology_report(build_Z(k.a, Subspace::span(k.a.dim(), {k.a.unit})));
                const oracle::DenseCyclic o(k.a);
                const auto ohh = o.hh(2), ohc = o.hc(2);
                if (h.hh != ohh || h.hc != ohc) return "library HH " + list(h.hh) + " HC " + list(h.hc) + ", oracle HH " + list(ohh) + " HC " + list(ohc);
                if (h.hh != k.hh) return "HH " + list(h.hh) + ", expected " + list(k.hh);
                if (!k.hc.empty() && h.hc != k.hc) return "HC " + list(h.hc) + ", expected " + list(k.hc);
                return std::string();
            });
        }
        all = c.finish() && all;
    }

    {
        Criterion c(9, "the non-free S3 configuration is not Galois", 5.0, true);
        c.item("s3-points-c2", [&] {
            try {
                io::galois_datum(shipped("s3-points-c2"));
            } catch (const GaloisConditionFailed& e) {
                if (e.rank >= e.target_dim) return std::string("no rank deficit reported");
                c.info("rank " + std::to_string(e.rank) + " of " + std::to_string(e.target_dim) + ", deficit " + std::to_string(e.target_dim - e.rank));
                return std::string();
            }
            return std::string("canonical map reported bijective");
        });
        all = c.finish() && all;
    }

    return all ? 0 : 1;
}
