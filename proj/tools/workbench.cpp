#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "delannoy/delannic.hpp"
#include "delannoy/functor.hpp"
#include "delannoy/linear.hpp"
#include "delannoy/measure.hpp"
#include "delannoy/order.hpp"
#include "delannoy/scenarios.hpp"
#include "delannoy/serialize.hpp"

using namespace delannoy;

namespace {

constexpr int kOk = 0, kFailed = 1, kInvalid = 2;

struct Invalid : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

GSet basic(int n) { return GSet::single(OrbitSymbol::basic(1, 0, n)); }

ExprPtr parse_or_report(const std::string& text) {
    try {
        return parse_expr(text);
    } catch (const ParseError& e) {
        std::ostringstream os;
        os << e.what() << "\n  " << text << "\n  " << std::string(e.position > 0 ? e.position - 1 : 0, ' ') << "^";
        throw Invalid(os.str());
    }
}

void print_morphism(const Morphism& f) {
    std::cout << "morphism " << f.source.str() << " -> " << f.target.str() << " in " << f.measure.str() << " over "
              << f.measure.field.name() << ", " << f.coeffs.size() << " nonzero entries\n";
    for (auto& [k, v] : f.coeffs)
        std::cout << "  " << v << " * [" << k.parents[0] << "," << k.parents[1] << ": " << k.text() << "]\n";
}

void check_type(int i) {
    if (i < 1 || i > 4) throw Invalid("category index must be 1..4");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Delannoy category workbench"};
    app.require_subcommand(1);
    bool as_json = false;
    std::string field_name;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--field", field_name, "coefficient field: Q or a prime (default from DELANNOY_FIELD)");

    auto* mt = app.add_subcommand("measure-table", "values of mu1..mu4 on p_{1,1}, p_{2,1}, p_{2,2}");

    auto* hd = app.add_subcommand("hom-dim", "dim Hom(C(R^(N)), C(R^(M))) in C_i");
    int hd_cat = 1, hd_n = 0, hd_m = 0;
    hd->add_option("--cat", hd_cat, "category index 1..4")->required();
    hd->add_option("N", hd_n)->required()->check(CLI::Range(0, 8));
    hd->add_option("M", hd_m)->required()->check(CLI::Range(0, 8));

    auto* cp = app.add_subcommand("compose", "compose two morphisms read from JSON: prints g o f");
    int cp_cat = 1;
    std::string cp_g, cp_f;
    cp->add_option("--cat", cp_cat, "category index 1..4")->required();
    cp->add_option("g", cp_g, "outer morphism")->required();
    cp->add_option("f", cp_f, "inner morphism")->required();

    auto* ord = app.add_subcommand("order", "ordered G-set expressions");
    ord->require_subcommand(1);
    auto* oe = ord->add_subcommand("eval", "evaluate and verify an expression");
    std::string oe_expr, oe_ambient = "mu1";
    oe->add_option("expr", oe_expr)->required();
    oe->add_option("--ambient", oe_ambient, "ambient measure spec; only its factor count matters");

    auto* pr = app.add_subcommand("profile", "Delannic profile of an expression");
    std::string pr_ambient, pr_expr, pr_conv = "slot";
    pr->add_option("--ambient", pr_ambient, "e.g. mu1, mu1xmu1")->required();
    pr->add_option("expr", pr_expr)->required();
    pr->add_option("--convention", pr_conv, "gamma convention: slot or elementwise")
        ->check(CLI::IsMember({"slot", "elementwise"}));

    auto* fn = app.add_subcommand("functor", "tensor functors out of C_i");
    fn->require_subcommand(1);
    int fn_source = 1, fn_bound = 3, fn_object = -1, fn_max_power = 0;
    double fn_budget = 0;
    std::string fn_target = "mu1", fn_expr, fn_morphism;
    auto common = [&](CLI::App* s) {
        s->add_option("--source", fn_source, "source category index 1..4")->required();
        s->add_option("--target", fn_target, "target measure spec");
        s->add_option("expr", fn_expr, "generator expression")->required();
    };
    auto* fb = fn->add_subcommand("build", "build and type-check");
    common(fb);
    auto* fa = fn->add_subcommand("apply", "apply to R^(n) or to a morphism");
    common(fa);
    auto* fa_opts = fa->add_option_group("what");
    fa_opts->add_option("--object", fn_object, "arity n of R^(n)");
    fa_opts->add_option("--morphism", fn_morphism, "morphism JSON file");
    fa_opts->require_option(1);
    auto* fc = fn->add_subcommand("check", "functoriality, monoidality, measure and transpose sweeps");
    common(fc);
    fc->add_option("--bound", fn_bound, "arity bound N")->check(CLI::Range(0, 4));
    fc->add_option("--budget", fn_budget, "seconds per sweep (0: unlimited)");
    fc->add_option("--max-power", fn_max_power, "largest tuple power a sweep may touch (0: cache ceiling)");

    auto* es = app.add_subcommand("envelope-separation", "left inverses of Phi0(p22^*) and Phi1(p22^*)");

    auto* sc = app.add_subcommand("scenario", "named scenario");
    std::string sc_name;
    int sc_bound = 3;
    sc->add_option("name", sc_name)->required()->check(CLI::IsMember(scenario_names()));
    sc->add_option("--bound", sc_bound, "arity bound for functor sweeps")->check(CLI::Range(0, 4));

    auto* st = app.add_subcommand("selftest", "all invariant suites");
    int st_depth = 3;
    st->add_option("--depth", st_depth)->check(CLI::Range(1, 4));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    auto report = [&](const ScenarioReport& r) {
        if (as_json) std::cout << r.to_json().dump(2) << "\n";
        else std::cout << r.text();
        return r.pass() ? kOk : kFailed;
    };

    try {
        Field field = field_name.empty() ? Field::from_env() : Field::parse(field_name);

        if (*mt) {
            const char* names[3] = {"p_{1,1}", "p_{2,1}", "p_{2,2}"};
            if (as_json) {
                json rows = json::array();
                for (int i = 1; i <= 4; ++i) {
                    auto b = base_values(i);
                    rows.push_back({{"measure", "mu" + std::to_string(i)}, {names[0], b.v1}, {names[1], b.v21}, {names[2], b.v22}});
                }
                std::cout << json{{"schema", "delannoy/measure-table@1"}, {"rows", rows}}.dump(2) << "\n";
            } else {
                std::cout << std::left << std::setw(6) << "" << std::right;
                for (auto* n : names) std::cout << std::setw(9) << n;
                std::cout << "\n";
                for (int i = 1; i <= 4; ++i) {
                    auto b = base_values(i);
                    std::cout << std::left << std::setw(6) << ("mu" + std::to_string(i)) << std::right << std::setw(9)
                              << b.v1 << std::setw(9) << b.v21 << std::setw(9) << b.v22 << "\n";
                }
            }
            return kOk;
        }

        if (*hd) {
            check_type(hd_cat);
            std::size_t d = hom_basis(basic(hd_n), basic(hd_m)).size();
            if (as_json) std::cout << json{{"cat", hd_cat}, {"n", hd_n}, {"m", hd_m}, {"dim", d}}.dump() << "\n";
            else std::cout << d << "\n";
            return kOk;
        }

        if (*cp) {
            check_type(cp_cat);
            Morphism g = morphism_from_json(read_json_file(cp_g));
            Morphism f = morphism_from_json(read_json_file(cp_f));
            for (const Morphism* h : {&g, &f})
                if (h->measure.r() != 1 || h->measure.index[0] != cp_cat)
                    throw Invalid("morphism lives in " + h->measure.str() + ", not C" + std::to_string(cp_cat));
            if (!(g.source == f.target)) throw Invalid("source of g differs from target of f");
            Morphism h = compose(g, f);
            if (as_json) std::cout << to_json(h).dump(2) << "\n";
            else print_morphism(h);
            return kOk;
        }

        if (*oe) {
            ExprPtr e = parse_or_report(oe_expr);
            MeasureSpec amb = MeasureSpec::parse(oe_ambient, field);
            if (e->max_factor() >= amb.r()) throw Invalid("expression uses a factor outside the ambient");
            OrderedGSet o = evaluate(e, amb.r());
            OrderReport v = verify(o);
            if (as_json) {
                json j = to_json(o);
                j["verified"] = v.pass;
                if (!v.pass) j["failure"] = v.failure;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << order_text(o) << "\n";
                std::cout << (v.pass ? "total order verified" : "NOT a total order: " + v.failure) << " ("
                          << v.pairs_checked << " pairs, " << v.triples_checked << " triples)\n";
            }
            return v.pass ? kOk : kFailed;
        }

        if (*pr) {
            ExprPtr e = parse_or_report(pr_expr);
            MeasureSpec amb = MeasureSpec::parse(pr_ambient, field);
            if (e->max_factor() >= amb.r()) throw Invalid("expression uses a factor outside the ambient");
            auto conv = pr_conv == "slot" ? GammaConvention::Slot : GammaConvention::Elementwise;
            DelannicProfile p = profile(evaluate(e, amb.r()), amb, conv);
            if (as_json) {
                std::cout << to_json(p).dump(2) << "\n";
            } else {
                std::string t = is_typed(p.type) ? std::to_string(type_index(p.type)) : type_name(p.type);
                std::cout << "type " << t << ", dim " << p.dim;
                if (p.uniform1 && p.uniform2) std::cout << ", gamma (" << p.g1 << ", " << p.g2 << ")";
                std::cout << "\n" << p.str() << "\n";
            }
            return kOk;
        }

        if (*fn) {
            check_type(fn_source);
            ExprPtr e = parse_or_report(fn_expr);
            MeasureSpec tgt = MeasureSpec::parse(fn_target, field);
            if (e->max_factor() >= tgt.r()) throw Invalid("expression uses a factor outside the target");
            std::shared_ptr<TensorFunctor> F;
            try {
                F = build_functor(fn_source, tgt, e);
            } catch (const BuildError& b) {
                if (as_json) std::cout << json{{"error", b.what()}, {"profile", to_json(b.computed)}}.dump(2) << "\n";
                throw Invalid(b.what());
            }
            if (*fb) {
                if (as_json) std::cout << to_json(*F).dump(2) << "\n";
                else std::cout << "built " << F->describe() << "\n";
                return kOk;
            }
            if (*fa) {
                if (fn_object >= 0) {
                    GSet im = apply_object(*F, basic(fn_object));
                    if (as_json) std::cout << to_json(im).dump(2) << "\n";
                    else std::cout << im.str() << "\n";
                } else {
                    Morphism f = morphism_from_json(read_json_file(fn_morphism));
                    Morphism h = apply_morphism(*F, f);
                    if (as_json) std::cout << to_json(h).dump(2) << "\n";
                    else print_morphism(h);
                }
                return kOk;
            }
            if (*fc) {
                ScenarioReport r;
                r.name = "functor-check";
                r.setup = F->describe() + ", N = " + std::to_string(fn_bound);
                auto line = [](const CheckReport& c) {
                    std::string s = std::to_string(c.checked) + "/" + std::to_string(c.total) + " cases";
                    if (!c.witness.empty()) s += ", witness: " + c.witness;
                    if (!c.note.empty()) s += ", " + c.note;
                    return s;
                };
                auto a = check_functoriality(*F, fn_bound, fn_budget, fn_max_power);
                r.check("functoriality", a.pass, line(a));
                auto b = check_monoidality(*F, fn_bound, fn_budget, fn_max_power);
                r.check("monoidality", b.pass, line(b));
                auto c = check_measure_compat(*F, fn_bound);
                r.check("measure compatibility", c.pass, line(c));
                auto d = check_transpose(*F, fn_bound);
                r.check("transpose", d.pass, line(d));
                r.info.push_back(std::string("faithful: ") + (faithful(*F) ? "yes" : "no"));
                auto fv = full(*F, fn_bound);
                r.info.push_back(std::string("full up to N: ") + (fv.full ? "yes" : "no"));
                return report(r);
            }
        }

        if (*es) return report(run_scenario("two-envelopes"));

        if (*sc) {
            SweepOptions o;
            o.bound = sc_bound;
            return report(run_scenario(sc_name, o));
        }

        if (*st) return report(selftest(st_depth));
    } catch (const Invalid& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const SchemaError& e) {
        std::cerr << "error: schema violation at " << (e.path.empty() ? "/" : e.path) << ": "
                  << std::string(e.what()).substr(e.path.size() + 2) << "\n";
        return kInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: over budget: " << e.what() << "\n";
        return kFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return kOk;
}
