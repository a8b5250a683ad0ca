// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "delannoy/delannic.hpp"
#include "delannoy/functor.hpp"
#include "delannoy/linear.hpp"
#include "delannoy/measure.hpp"
#include "delannoy/order.hpp"
#include "delannoy/scenarios.hpp"
#include "oracles.hpp"

#ifndef WORKBENCH_PATH
#define WORKBENCH_PATH "workbench"
#endif

using namespace delannoy;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

void report(int n, bool ok, const std::string& what, const std::string& detail) {
    if (!ok) ++failures;
    std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << "  " << what;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << std::endl;
}

std::string fmt(double s) {
    std::ostringstream os;
    os.precision(3);
    os << s << " s";
    return os.str();
}

GSet basic(int n) { return GSet::single(OrbitSymbol::basic(1, 0, n)); }

// expected values, rows mu1..mu4, columns p11 p21 p22
constexpr int kTable[4][3] = {{-1, -1, -1}, {0, -1, 0}, {0, 0, -1}, {1, 0, 0}};

void criterion1() {
    auto t = Clock::now();
    std::string out;
    FILE* p = popen(WORKBENCH_PATH " --json measure-table", "r");
    if (p) {
        std::array<char, 4096> buf{};
        std::size_t k;
        while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), k);
        int rc = pclose(p);
        if (rc != 0) out.clear();
    }
    double secs = since(t);
    bool ok = !out.empty();
    std::string detail;
    try {
        auto j = nlohmann::json::parse(out);
        auto& rows = j.at("rows");
        ok = ok && rows.size() == 4;
        for (int i = 0; i < 4 && ok; ++i) {
            auto& r = rows[i];
            ok = r.at("measure") == "mu" + std::to_string(i + 1) && r.at("p_{1,1}") == kTable[i][0] &&
                 r.at("p_{2,1}") == kTable[i][1] && r.at("p_{2,2}") == kTable[i][2];
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    ok = ok && secs < 1.0;
    report(1, ok, "measure-table reproduces the table", "cli " + fmt(secs) + (detail.empty() ? "" : ", " + detail));
}

void criterion2() {
    auto t = Clock::now();
    bool ok = true;
    long paths = 0;
    std::string bad;
    for (int idx = 1; idx <= 4 && ok; ++idx) {
        auto row = kTable[idx - 1];
        for (int n = 0; n <= 7 && ok; ++n)
            for (int m = 0; m <= n && ok; ++m)
                for (auto& j : enumerate_injections(m, n)) {
                    std::vector<int> omitted;
                    for (int x = 1; x <= n; ++x)
                        if (!std::binary_search(j.v.begin(), j.v.end(), x)) omitted.push_back(x);
                    const int want = oracle::omit_measure(n, omitted, row[0], row[1], row[2]);
                    if (mu_injection_int(j, idx) != want) {
                        ok = false;
                        bad = "mu" + std::to_string(idx) + " on " + j.str();
                        break;
                    }
                    std::sort(omitted.begin(), omitted.end());
                    do {
                        ++paths;
                        if (mu_injection_path(j, omitted, idx) != want) {
                            ok = false;
                            bad = "mu" + std::to_string(idx) + " path on " + j.str();
                            break;
                        }
                    } while (std::next_permutation(omitted.begin(), omitted.end()));
                    if (!ok) break;
                }
    }
    long squares = 0;
    for (auto spec : {MeasureSpec::single(1), MeasureSpec::single(2), MeasureSpec::single(3), MeasureSpec::single(4),
                      MeasureSpec::product({1, 1})}) {
        auto a = check_measure_axioms(spec, 4);
        squares += a.squares + a.compositions;
        if (!a.pass) {
            ok = false;
            bad = spec.str() + ": " + a.counterexample;
        }
    }
    report(2, ok, "path independence for n <= 7; axioms at N = 4 for mu1..mu4 and mu1 x mu1",
           std::to_string(paths) + " paths, " + std::to_string(squares) + " axiom instances, " + fmt(since(t)) +
               (bad.empty() ? "" : ", first failure " + bad));
}

void criterion3() {
    bool ok = true;
    for (int n = 0; n <= 4; ++n)
        for (int m = 0; m <= 4; ++m) {
            const auto d = hom_basis(basic(n), basic(m)).size();
            ok = ok && d == oracle::delannoy(n, m) && d == delannoy_number(n, m);
        }
    auto h = [](int n, int m) { return hom_basis(basic(n), basic(m)).size(); };
    ok = ok && h(1, 1) == 3 && h(2, 2) == 13 && h(3, 3) == 63;
    report(3, ok, "hom dimensions are Delannoy numbers for n, m <= 4",
           "D(1,1)=" + std::to_string(h(1, 1)) + " D(2,2)=" + std::to_string(h(2, 2)) + " D(3,3)=" +
               std::to_string(h(3, 3)));
}

void criterion4() {
    auto t = Clock::now();
    bool ok = true;
    long n = 0;
    std::string bad;
    for (int idx = 1; idx <= 4; ++idx) {
        auto r = check_category_laws(MeasureSpec::single(idx), 3);
        n += r.identities + r.triples + r.traces;
        if (!r.pass) {
            ok = false;
            bad = "mu" + std::to_string(idx) + ": " + r.counterexample;
        }
    }
    double secs = since(t);
    ok = ok && secs < 60;
    report(4, ok, "associativity, identities and trace cyclicity up to R^(3) in C1..C4",
           std::to_string(n) + " instances, " + fmt(secs) + (bad.empty() ? "" : ", " + bad));
}

void criterion5() {
    auto r2 = tuples_ordered(ordered_gen(1, 0), 2);
    auto t = tuples(r2, 2);
    std::vector<int> got;
    for (auto& o : t.gset.orbits) got.push_back(o[0]);
    std::vector<int> sorted = got;
    std::sort(sorted.rbegin(), sorted.rend());
    bool ok = sorted == std::vector<int>{4, 4, 4, 3, 3, 3};
    std::string s;
    for (int a : got) s += "(" + std::to_string(a) + ")";
    report(5, ok, "tuples of lexicographic R^(2) at n = 2 are three R^(4) and three R^(3)", s);
}

void criterion6() {
    auto t = Clock::now();
    ClosureOptions opt;  // size 4, lemma operands of size 3, powers 0..3
    auto r = closure_suite(opt);
    std::ostringstream d;
    d << r.evaluated << " profiles, " << r.sums << " sums (" << r.sums_undefined << " undefined), " << r.products
      << " products, " << r.powers << " powers, " << r.lemma_pairs << " lemma pairs, " << r.skipped
      << " over budget, " << fmt(since(t)) << "; power table with lambda_n(2)/lambda_n(3) as corrected";
    if (!r.failures.empty()) d << "; first failure " << r.failures.front();
    report(6, r.pass && r.failures.empty(), "type tables to expression size 4 and the sum lemma on size-3 pairs",
           d.str());
}

void criterion7() {
    auto t = Clock::now();
    bool ok = true;
    std::ostringstream d;
    for (auto& c : standard_functors()) {
        const bool heavy = c.name == "Phi1";
        SweepOptions opt;
        opt.bound = heavy ? 2 : 3;
        auto s = check_functor(c, opt);
        bool good = s.functoriality.pass && s.monoidality.pass && s.measure_compat.pass && s.transpose.pass && s.faithful;
        d << c.name << ":" << (good ? "ok" : "bad") << "@N=" << opt.bound << " ";
        if (!good) {
            ok = false;
            d << "(" << s.functoriality.witness << s.monoidality.witness << s.measure_compat.witness << ") ";
        }
        if (heavy) {
            // Phi1 at N = 3 needs tuple powers A^(n) with n up to 6; run
            // cheapest cases first under a time budget, capped at A^(5).
            auto F = s.F;
            auto fr = check_functoriality(*F, 3, 300, 5);
            auto mr = check_monoidality(*F, 3, 200, 5);
            auto cr = check_measure_compat(*F, 3);
            bool full3 = fr.pass && mr.pass && cr.pass && fr.complete && mr.complete;
            d << "Phi1@N=3 functoriality " << fr.checked << "/" << fr.total << (fr.pass ? "" : " " + fr.note)
              << (fr.witness.empty() ? "" : " witness " + fr.witness) << ", monoidality " << mr.checked << "/"
              << mr.total << (mr.pass ? "" : " " + mr.note) << (mr.witness.empty() ? "" : " witness " + mr.witness)
              << ", measure compat " << (cr.pass ? "ok" : "bad") << " ";
            ok = ok && full3;
        }
    }
    d << fmt(since(t));
    report(7, ok, "Phi0, Phi1 and the functors out of C3, C4 at N = 3: functorial, monoidal, measure compatible, faithful",
           d.str());
}

void criterion8() {
    auto e = envelope_separation();
    bool ok = !e.phi0.witness && e.phi0_certificate_ok && e.phi1.witness && e.phi1_witness_ok;
    report(8, ok, "Phi0(p22^*) has no left inverse, Phi1(p22^*) has a verified one",
           "Phi0: " + std::to_string(e.phi0.equations) + "x" + std::to_string(e.phi0.unknowns) +
               (e.phi0_certificate_ok ? " certificate ok" : " no certificate") + "; Phi1: " +
               std::to_string(e.phi1.equations) + "x" + std::to_string(e.phi1.unknowns) +
               (e.phi1_witness_ok ? " g o f = id" : " no witness"));
}

void criterion9() {
    auto s = dim0_square();
    bool ok = s.prof_e_prime.type == DelType::T3 && s.prof_e.type == DelType::T1 && s.prof_c1.type == DelType::T2 &&
              s.iso.has_value() && s.power_splits && s.carrier_ok;
    report(9, ok, "dimension-0 square: E' type 3, E type 1, A + A^(2) type 2, ordered isomorphism",
           "E' " + type_name(s.prof_e_prime.type) + ", E " + type_name(s.prof_e.type) + ", A+A^(2) " +
               type_name(s.prof_c1.type) + ", iso " + (s.iso ? "found" : "missing"));
}

// Brute-force Gram rank: the trace of W o Z over configurations (x, y, x),
// weighted by forgetting y-only coordinates, times the measure of R^(a).
std::size_t oracle_gram_rank(int a, int b, int idx) {
    auto row = kTable[idx - 1];
    std::vector<std::string> zs, ws;
    for (auto& c : oracle::orbits({b, a})) zs.push_back(oracle::word(c[0], c[1]));
    for (auto& c : oracle::orbits({a, b})) ws.push_back(oracle::word(c[0], c[1]));
    std::sort(zs.begin(), zs.end());
    std::sort(ws.begin(), ws.end());
    std::map<std::string, std::size_t> zi, wi;
    for (std::size_t i = 0; i < zs.size(); ++i) zi[zs[i]] = i;
    for (std::size_t i = 0; i < ws.size(); ++i) wi[ws[i]] = i;
    std::vector<std::vector<mpq_class>> g(zs.size(), std::vector<mpq_class>(ws.size(), 0));
    std::vector<int> all(a);
    std::iota(all.begin(), all.end(), 1);
    const int dim_a = oracle::omit_measure(a, all, row[0], row[1], row[2]);
    for (auto& c : oracle::orbits({a, b})) {
        const auto& x = c[0];
        const auto& y = c[1];
        int k = 0;
        for (auto& tpl : c)
            for (int v : tpl) k = std::max(k, v);
        std::vector<int> drop;
        for (int v = 1; v <= k; ++v)
            if (!std::count(x.begin(), x.end(), v)) drop.push_back(v);
        int m = oracle::omit_measure(k, drop, row[0], row[1], row[2]);
        g[zi.at(oracle::word(y, x))][wi.at(oracle::word(x, y))] += m * dim_a;
    }
    return oracle::rank(g);
}

void criterion10() {
    bool ok = true;
    std::ostringstream d;
    for (auto& e : gram_rank_profile(MeasureSpec::single(1), 3)) {
        if (e.a == e.b && e.rank != e.size) ok = false;
        if (e.rank != oracle_gram_rank(e.a, e.b, 1)) ok = false;
    }
    d << "C1 End full rank for n <= 3: " << (ok ? "yes" : "no") << "; C2 ranks";
    // frozen after the brute-force cross-check: only Hom(1, 1) survives
    bool deficient = false;
    for (auto& e : gram_rank_profile(MeasureSpec::single(2), 3)) {
        std::size_t want = (e.a == 0 && e.b == 0) ? 1 : 0;
        if (e.rank != want || e.rank != oracle_gram_rank(e.a, e.b, 2)) ok = false;
        if (e.rank < e.size) deficient = true;
        d << " (" << e.a << "," << e.b << ")=" << e.rank << "/" << e.size;
    }
    ok = ok && deficient;
    report(10, ok, "Gram matrices: C1 End full rank; C2 rank profile with oracle-confirmed deficiency", d.str());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::cout << (failures ? "acceptance: FAIL (" + std::to_string(failures) + " criteria)" : std::string("acceptance: PASS"))
              << std::endl;
    return failures ? 1 : 0;
}
