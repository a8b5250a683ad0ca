#include "delannoy/functor.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <tuple>

namespace delannoy {

namespace {

GSet basic(int n) { return GSet::single(OrbitSymbol::basic(1, 0, n)); }

struct Image {
    GSet gset;
    std::vector<std::size_t> offset;  // first image orbit of each source orbit
};

Image image_of(const TensorFunctor& F, const GSet& x) {
    if (x.r != 1) throw std::invalid_argument("source objects live over a single group factor");
    Image im;
    im.gset.r = F.target.r();
    for (auto& o : x.orbits) {
        im.offset.push_back(im.gset.size());
        const auto& p = F.power(o[0]);
        im.gset.orbits.insert(im.gset.orbits.end(), p.gset.orbits.begin(), p.gset.orbits.end());
    }
    return im;
}

// Orbit of power(n) through which P maps when only `slots` are kept.
std::pair<std::size_t, TransitiveMap> select(const TensorFunctor& F, const Component& p, const std::vector<int>& slots) {
    const auto& lower = F.power(static_cast<int>(slots.size()));
    if (slots.empty()) return {0, TransitiveMap::to_point(p.ambient())};
    auto pr = project_component(p, slots);
    return {lower.find(pr.comp), std::move(pr.map)};
}

}  // namespace

std::string TensorFunctor::describe() const {
    std::ostringstream os;
    os << "C" << source_type << " -> " << target.str();
    if (expr) os << " via " << expr->str();
    os << " (" << prof.str() << ")";
    return os.str();
}

const TuplePower& TensorFunctor::power(int n) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = powers_.find(n);
        if (it != powers_.end()) return *it->second;
    }
    if (n > ceiling)
        throw BudgetExceeded("tuple power " + std::to_string(n) + " above the cache ceiling " + std::to_string(ceiling));
    auto p = std::make_shared<const TuplePower>(tuples(gen, n, limits));
    std::lock_guard<std::mutex> lock(mu_);
    return *powers_.emplace(n, std::move(p)).first->second;
}

std::shared_ptr<const Morphism> TensorFunctor::block(const Word& w) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = blocks_.find(w);
        if (it != blocks_.end()) return it->second;
    }
    OIInjection a, b;
    a.n = b.n = static_cast<int>(w.size());
    for (std::size_t p = 0; p < w.size(); ++p) {
        if (w[p] & kL) a.v.push_back(static_cast<int>(p) + 1);
        if (w[p] & kR) b.v.push_back(static_cast<int>(p) + 1);
    }
    const auto& top = power(a.n);
    GSetMap pa = top.along(a, power(a.m()));
    GSetMap pb = top.along(b, power(b.m()));
    auto m = std::make_shared<const Morphism>(compose(pushforward(pa, target), pullback(pb, target)));
    if (m->coeffs.size() > block_cache_limit) return m;
    std::lock_guard<std::mutex> lock(mu_);
    return blocks_.emplace(w, std::move(m)).first->second;
}

std::shared_ptr<TensorFunctor> build_unchecked(int source_type, const MeasureSpec& target, const OrderedGSet& gen) {
    if (source_type < 1 || source_type > 4) throw std::invalid_argument("source type must be 1..4");
    if (gen.r() != target.r()) throw std::invalid_argument("generator shape differs from the target measure");
    auto F = std::make_shared<TensorFunctor>();
    F->source_type = source_type;
    F->target = target;
    F->gen = gen;
    F->prof = profile(gen, target, GammaConvention::Slot, false);
    return F;
}

std::shared_ptr<TensorFunctor> build_functor(int source_type, const MeasureSpec& target, const OrderedGSet& gen) {
    auto rep = verify(gen);
    if (!rep.pass) throw std::invalid_argument("generator order does not verify: " + rep.failure);
    auto F = build_unchecked(source_type, target, gen);
    const DelType t = F->prof.type;
    bool ok = type_index(t) == source_type || (t == DelType::Zero && (source_type == 2 || source_type == 3));
    if (!ok)
        throw BuildError("generator has " + F->prof.str() + ", expected type " + std::to_string(source_type), F->prof);
    return F;
}

std::shared_ptr<TensorFunctor> build_functor(int source_type, const MeasureSpec& target, const ExprPtr& expr,
                                             const Substitution* subst) {
    auto F = build_functor(source_type, target, evaluate(expr, target.r(), {}, subst));
    if (!subst || subst->empty()) F->expr = expr;
    return F;
}

GSet apply_object(const TensorFunctor& F, const GSet& x) { return image_of(F, x).gset; }

Morphism apply_morphism(const TensorFunctor& F, const Morphism& f) {
    if (!(f.measure == F.source_measure()))
        throw std::invalid_argument("morphism lives in " + f.measure.str() + ", functor expects " +
                                    F.source_measure().str());
    Image ix = image_of(F, f.source), iy = image_of(F, f.target);
    Morphism out = Morphism::zero(ix.gset, iy.gset, F.target);
    for (auto& [k, c] : f.coeffs) {
        auto blk = F.block(k.words[0]);
        const Morphism& b = *blk;
        const auto dy = static_cast<std::uint32_t>(iy.offset[k.parents[0]]);
        const auto dx = static_cast<std::uint32_t>(ix.offset[k.parents[1]]);
        for (auto& [bk, bv] : b.coeffs) {
            Component s = bk;
            s.parents[0] += dy;
            s.parents[1] += dx;
            out.add(s, bv * c);
        }
    }
    return out;
}

GSetMap apply_injection(const TensorFunctor& F, const OIInjection& j) {
    return F.power(j.n).along(j, F.power(j.m()));
}

GSetMap regrouping_iso(const TensorFunctor& F, const GSet& x, const GSet& y) {
    ProductObject xy = ProductObject::of(x, y);
    Image src = image_of(F, xy.gset), ix = image_of(F, x), iy = image_of(F, y);
    ProductObject tgt = ProductObject::of(ix.gset, iy.gset);
    GSetMap h{src.gset, tgt.gset, {}};
    std::vector<char> hit(tgt.comps.size(), 0);
    for (std::size_t u = 0; u < xy.comps.size(); ++u) {
        const Component& cu = xy.comps[u];
        std::vector<int> xs, ys;
        const Word& w = cu.words[0];
        for (std::size_t p = 0; p < w.size(); ++p) {
            if (w[p] & kL) xs.push_back(static_cast<int>(p));
            if (w[p] & kR) ys.push_back(static_cast<int>(p));
        }
        for (auto& pc : F.power(static_cast<int>(w.size())).comps) {
            auto [a, ma] = select(F, pc, xs);
            auto [b, mb] = select(F, pc, ys);
            auto img = image_factorization(ma, static_cast<std::uint32_t>(ix.offset[cu.parents[0]] + a), mb,
                                           static_cast<std::uint32_t>(iy.offset[cu.parents[1]] + b));
            std::size_t t = tgt.find(img.comp);
            if (!img.map.is_identity() || hit[t])
                throw std::logic_error("regrouping map is not an isomorphism at " + pc.text());
            hit[t] = 1;
            h.assign.push_back({t, std::move(img.map)});
        }
    }
    for (char c : hit)
        if (!c) throw std::logic_error("regrouping map is not surjective");
    return h;
}

std::vector<Scalar> gamma_tilde(const GSetMap& f, const MeasureSpec& m) {
    std::vector<Scalar> g(f.target.size(), m.scalar(0));
    for (auto& a : f.assign) g[a.target] += mu_transitive(a.map, m);
    return g;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Budget {
    Clock::time_point start = Clock::now();
    double limit;
    explicit Budget(double s) : limit(s) {}
    bool out() const { return limit > 0 && std::chrono::duration<double>(Clock::now() - start).count() > limit; }
};

// Basis morphisms R^(a) -> R^(b) and their images, built on demand.
struct BasisCache {
    const TensorFunctor& F;
    MeasureSpec src;
    std::map<std::pair<int, int>, std::vector<Morphism>> basis;
    std::map<std::tuple<int, int, std::size_t>, std::shared_ptr<const Morphism>> images;

    explicit BasisCache(const TensorFunctor& f) : F(f), src(f.source_measure()) {}

    const std::vector<Morphism>& of(int a, int b) {
        auto it = basis.find({a, b});
        if (it != basis.end()) return it->second;
        std::vector<Morphism> v;
        for (auto& z : hom_basis(basic(a), basic(b))) v.push_back(Morphism::basis(basic(a), basic(b), src, z));
        return basis.emplace(std::make_pair(a, b), std::move(v)).first->second;
    }
    std::shared_ptr<const Morphism> image(int a, int b, std::size_t i) {
        auto k = std::make_tuple(a, b, i);
        auto it = images.find(k);
        if (it != images.end()) return it->second;
        auto m = std::make_shared<const Morphism>(apply_morphism(F, of(a, b)[i]));
        if (m->coeffs.size() > F.block_cache_limit) return m;
        return images.emplace(k, std::move(m)).first->second;
    }
    // Rough size of composing images of basis words of lengths qw and qv over R^(b).
    double work(std::size_t qw, std::size_t qv, int b) const {
        auto sz = [&](std::size_t q) { return static_cast<double>(F.power(static_cast<int>(q)).comps.size()); };
        return sz(qw) * sz(qv) / sz(static_cast<std::size_t>(b));
    }
};

std::size_t word_len(const Morphism& f) { return f.coeffs.begin()->first.words[0].size(); }

std::string arity_text(int a, int b) { return "R^(" + std::to_string(a) + ")->R^(" + std::to_string(b) + ")"; }

}  // namespace

CheckReport check_functoriality(const TensorFunctor& F, int N, double budget_seconds, int max_power) {
    CheckReport rep;
    const MeasureSpec src = F.source_measure();
    Budget budget(budget_seconds);
    BasisCache bc(F);
    struct Pair {
        int a, b, c;
        std::size_t i, j;
        int tier;
        double cost;
    };
    if (max_power <= 0) max_power = F.ceiling;
    std::vector<Pair> pairs;
    for (int a = 0; a <= N; ++a)
        for (int b = 0; b <= N; ++b)
            for (int c = 0; c <= N; ++c) {
                const auto& vs = bc.of(a, b);
                const auto& ws = bc.of(b, c);
                for (std::size_t i = 0; i < vs.size(); ++i)
                    for (std::size_t j = 0; j < ws.size(); ++j) {
                        std::size_t lv = word_len(vs[i]), lw = word_len(ws[j]);
                        int tier = static_cast<int>(std::max({lw, lv, static_cast<std::size_t>(a + c)}));
                        pairs.push_back({a, b, c, i, j, tier, tier <= max_power ? bc.work(lw, lv, b) : 0.0});
                    }
            }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
        return std::tie(x.tier, x.cost) < std::tie(y.tier, y.cost);
    });
    rep.total = static_cast<long>(pairs.size()) + N + 1;
    try {
        for (int n = 0; n <= N; ++n) {
            ++rep.checked;
            GSet x = basic(n);
            if (apply_morphism(F, Morphism::identity(x, src)) != Morphism::identity(apply_object(F, x), F.target)) {
                rep.pass = false;
                rep.witness = "identity on R^(" + std::to_string(n) + ")";
                return rep;
            }
        }
        for (const Pair& p : pairs) {
            if (budget.out() || p.tier > max_power) {
                rep.pass = rep.complete = false;
                rep.note = budget.out() ? "time budget exhausted"
                                        : "remaining cases need tuple powers above " + std::to_string(max_power);
                return rep;
            }
            ++rep.checked;
            const Morphism& v = bc.of(p.a, p.b)[p.i];
            const Morphism& w = bc.of(p.b, p.c)[p.j];
            Morphism lhs = apply_morphism(F, compose(w, v));
            Morphism rhs = compose(*bc.image(p.b, p.c, p.j), *bc.image(p.a, p.b, p.i));
            if (lhs != rhs) {
                rep.pass = false;
                rep.witness = "W = " + w.coeffs.begin()->first.text() + " on " + arity_text(p.b, p.c) + ", V = " +
                              v.coeffs.begin()->first.text() + " on " + arity_text(p.a, p.b);
                return rep;
            }
        }
    } catch (const BudgetExceeded& e) {
        rep.pass = rep.complete = false;
        rep.note = std::string("budget: ") + e.what();
    }
    return rep;
}

CheckReport check_monoidality(const TensorFunctor& F, int N, double budget_seconds, int max_power) {
    CheckReport rep;
    Budget budget(budget_seconds);
    BasisCache bc(F);
    struct Case {
        int a, b, a2, b2;
        std::size_t i, j;
        int tier;
        double cost;
    };
    if (max_power <= 0) max_power = F.ceiling;
    std::vector<Case> cases;
    for (int a = 0; a <= N; ++a)
        for (int a2 = 0; a + a2 <= N; ++a2)
            for (int b = 0; b <= N; ++b)
                for (int b2 = 0; b + b2 <= N; ++b2) {
                    const auto& fs = bc.of(a, b);
                    const auto& gs = bc.of(a2, b2);
                    for (std::size_t i = 0; i < fs.size(); ++i)
                        for (std::size_t j = 0; j < gs.size(); ++j) {
                            std::size_t lf = word_len(fs[i]), lg = word_len(gs[j]);
                            int tier = static_cast<int>(lf + lg);
                            cases.push_back({a, b, a2, b2, i, j, tier, tier <= max_power ? bc.work(lf, lg, 0) : 0.0});
                        }
                }
    std::stable_sort(cases.begin(), cases.end(), [](const Case& x, const Case& y) {
        return std::tie(x.tier, x.cost) < std::tie(y.tier, y.cost);
    });
    rep.total = static_cast<long>(cases.size()) + 1;
    try {
        ++rep.checked;
        if (!(apply_object(F, GSet::point(1)) == GSet::point(F.target.r()))) {
            rep.pass = false;
            rep.witness = "unit object not preserved";
            return rep;
        }
        std::map<std::pair<int, int>, Morphism> regroup;
        auto R = [&](int p, int q) -> const Morphism& {
            auto it = regroup.find({p, q});
            if (it == regroup.end())
                it = regroup.emplace(std::make_pair(p, q), pushforward(regrouping_iso(F, basic(p), basic(q)), F.target))
                         .first;
            return it->second;
        };
        for (const Case& c : cases) {
            if (budget.out() || c.tier > max_power) {
                rep.pass = rep.complete = false;
                rep.note = budget.out() ? "time budget exhausted"
                                        : "remaining cases need tuple powers above " + std::to_string(max_power);
                return rep;
            }
            ++rep.checked;
            const Morphism& f = bc.of(c.a, c.b)[c.i];
            const Morphism& g = bc.of(c.a2, c.b2)[c.j];
            Morphism lhs = compose(R(c.b, c.b2), apply_morphism(F, tensor(f, g)));
            Morphism rhs = compose(tensor(*bc.image(c.a, c.b, c.i), *bc.image(c.a2, c.b2, c.j)), R(c.a, c.a2));
            if (lhs != rhs) {
                rep.pass = false;
                rep.witness = "f = " + f.coeffs.begin()->first.text() + " on " + arity_text(c.a, c.b) + ", g = " +
                              g.coeffs.begin()->first.text() + " on " + arity_text(c.a2, c.b2);
                return rep;
            }
        }
    } catch (const BudgetExceeded& e) {
        rep.pass = rep.complete = false;
        rep.note = std::string("budget: ") + e.what();
    } catch (const std::logic_error& e) {
        rep.pass = false;
        rep.witness = e.what();
    }
    return rep;
}

CheckReport check_measure_compat(const TensorFunctor& F, int N) {
    CheckReport rep;
    const MeasureSpec src = F.source_measure();
    auto one = [&](const OIInjection& j, const std::string& what) {
        ++rep.checked;
        Scalar want = mu_injection(j, src);
        for (auto& g : gamma_tilde(apply_injection(F, j), F.target))
            if (g != want) {
                rep.pass = false;
                if (rep.witness.empty())
                    rep.witness = what + " " + j.str() + ": gamma " + g.str() + " but measure " + want.str();
                return false;
            }
        return true;
    };
    try {
        bool gen_ok = one(OIInjection::omit(1, 1), "generator") & one(OIInjection::omit(2, 1), "generator") &
                      one(OIInjection::omit(2, 2), "generator");
        bool sweep_ok = true;
        for (int n = 0; n <= N; ++n)
            for (int m = 0; m <= n; ++m)
                for (auto& j : enumerate_injections(m, n)) sweep_ok = one(j, "injection") && sweep_ok;
        for (int n = 1; n <= std::max(N, 4); ++n)
            for (int i = 1; i <= n; ++i) sweep_ok = one(OIInjection::omit(n, i), "omission") && sweep_ok;
        if (gen_ok != sweep_ok) rep.note = "generator check and full sweep disagree";
        for (int n = 0; n <= N; ++n) {
            ++rep.checked;
            Scalar want = mu_object(basic(n), src);
            Scalar got = mu_object(apply_object(F, basic(n)), F.target);
            if (got != want) {
                rep.pass = false;
                if (rep.witness.empty())
                    rep.witness = "dim of image of R^(" + std::to_string(n) + ") is " + got.str() + ", expected " +
                                  want.str();
            }
        }
    } catch (const BudgetExceeded& e) {
        rep.pass = false;
        rep.note = std::string("budget: ") + e.what();
    }
    return rep;
}

CheckReport check_transpose(const TensorFunctor& F, int N) {
    CheckReport rep;
    const MeasureSpec src = F.source_measure();
    try {
        for (int a = 0; a <= N; ++a)
            for (int b = 0; b <= N; ++b)
                for (auto& z : hom_basis(basic(a), basic(b))) {
                    ++rep.checked;
                    Morphism f = Morphism::basis(basic(a), basic(b), src, z);
                    if (apply_morphism(F, transpose(f)) != transpose(apply_morphism(F, f))) {
                        rep.pass = false;
                        rep.witness = z.text();
                        return rep;
                    }
                }
    } catch (const BudgetExceeded& e) {
        rep.pass = false;
        rep.note = std::string("budget: ") + e.what();
    }
    return rep;
}

bool faithful(const TensorFunctor& F) {
    // finite-like ordered sets are exactly those made of points
    bool orbit_test = false;
    for (auto& o : F.gen.carrier.orbits) orbit_test = orbit_test || !o.is_point();
    if (F.expr && structurally_infinite(F.expr) != orbit_test)
        throw std::logic_error("structural and orbit-level finite-like tests disagree");
    return orbit_test;
}

FullVerdict full(const TensorFunctor& F, int N) {
    FullVerdict v;
    v.bound = N;
    for (int n = 0; n <= N; ++n) {
        v.orbit_counts.push_back(F.power(n).comps.size());
        if (v.orbit_counts.back() > 1) v.full = false;
    }
    return v;
}

}  // namespace delannoy
