#include "delannoy/linear.hpp"

#include <array>
#include <mutex>
#include <stdexcept>
#include <string>

namespace delannoy {

namespace {

void check_same(const MeasureSpec& a, const MeasureSpec& b) {
    if (!(a == b)) throw std::invalid_argument("measure mismatch: " + a.str() + " vs " + b.str());
}

Component key(std::size_t tgt, std::size_t src, std::vector<Word> words) {
    return Component{{static_cast<std::uint32_t>(tgt), static_cast<std::uint32_t>(src)}, std::move(words)};
}

}  // namespace

// --- Morphism ------------------------------------------------------------

Morphism Morphism::zero(const GSet& source, const GSet& target, const MeasureSpec& m) {
    if (source.r != m.r() || target.r != m.r()) throw std::invalid_argument("group shape mismatch");
    return Morphism{source, target, m, {}};
}

Morphism Morphism::identity(const GSet& x, const MeasureSpec& m) {
    Morphism f = zero(x, x, m);
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::vector<Word> w;
        for (int t = 0; t < x.r; ++t) w.emplace_back(x[i][t], kB);
        f.coeffs.emplace(key(i, i, std::move(w)), m.scalar(1));
    }
    return f;
}

Morphism Morphism::basis(const GSet& source, const GSet& target, const MeasureSpec& m, const Component& z) {
    Morphism f = zero(source, target, m);
    f.add(z, m.scalar(1));
    if (!f.valid()) throw std::invalid_argument("not a component of target x source: " + z.text());
    return f;
}

void Morphism::add(const Component& k, const Scalar& v) {
    if (v.is_zero()) return;
    auto it = coeffs.find(k);
    if (it == coeffs.end()) {
        coeffs.emplace(k, v.in(measure.field));
        return;
    }
    it->second += v;
    if (it->second.is_zero()) coeffs.erase(it);
}

Scalar Morphism::coeff(const Component& k) const {
    auto it = coeffs.find(k);
    return it == coeffs.end() ? measure.scalar(0) : it->second;
}

bool Morphism::valid() const {
    for (auto& [k, v] : coeffs) {
        if (v.is_zero() || k.slots() != 2 || k.r() != measure.r()) return false;
        if (k.parents[0] >= target.size() || k.parents[1] >= source.size()) return false;
        const auto& ts = target[k.parents[0]];
        const auto& ss = source[k.parents[1]];
        for (int t = 0; t < k.r(); ++t) {
            int nl = 0, nr = 0;
            for (Letter x : k.words[t]) {
                if (x != kL && x != kR && x != kB) return false;
                nl += x & 1;
                nr += x >> 1 & 1;
            }
            if (nl != ts[t] || nr != ss[t]) return false;
        }
    }
    return true;
}

Morphism Morphism::operator+(const Morphism& o) const {
    if (!(source == o.source) || !(target == o.target)) throw std::invalid_argument("adding morphisms of different shape");
    check_same(measure, o.measure);
    Morphism s = *this;
    for (auto& [k, v] : o.coeffs) s.add(k, v);
    return s;
}

Morphism Morphism::operator-(const Morphism& o) const { return *this + o.scaled(measure.scalar(-1)); }

Morphism Morphism::scaled(const Scalar& c) const {
    Morphism s = zero(source, target, measure);
    if (c.is_zero()) return s;
    for (auto& [k, v] : coeffs) s.coeffs.emplace(k, v * c);
    return s;
}

bool Morphism::operator==(const Morphism& o) const {
    if (!(source == o.source) || !(target == o.target) || !(measure == o.measure)) return false;
    if (coeffs.size() != o.coeffs.size()) return false;
    auto a = coeffs.begin();
    auto b = o.coeffs.begin();
    for (; a != coeffs.end(); ++a, ++b)
        if (!(a->first == b->first) || a->second != b->second) return false;
    return true;
}

// --- products ------------------------------------------------------------

ProductObject ProductObject::of(const GSet& x, const GSet& y) {
    ProductObject p;
    p.gset.r = x.r;
    if (!x.empty() && !y.empty()) p.comps = product_decompose({x, y});
    else if (x.r != y.r) throw std::invalid_argument("group shape mismatch");
    p.index.reserve(p.comps.size());
    for (std::size_t i = 0; i < p.comps.size(); ++i) {
        p.gset.orbits.push_back(p.comps[i].ambient());
        p.index.emplace(p.comps[i], i);
    }
    return p;
}

std::size_t ProductObject::find(const Component& c) const {
    auto it = index.find(c);
    if (it == index.end()) throw std::logic_error("component missing from product object: " + c.text());
    return it->second;
}

std::vector<Component> hom_basis(const GSet& x, const GSet& y) {
    if (x.r != y.r) throw std::invalid_argument("group shape mismatch");
    if (x.empty() || y.empty()) return {};
    return product_decompose({y, x});
}

// --- pullback / pushforward ----------------------------------------------

Morphism pullback(const GSetMap& f, const MeasureSpec& m) {
    Morphism out = Morphism::zero(f.target, f.source, m);
    for (std::size_t a = 0; a < f.assign.size(); ++a) {
        const auto& as = f.assign[a];
        std::vector<Word> words;
        for (int t = 0; t < m.r(); ++t) {
            Word w(f.source[a][t], kL);
            for (int x : as.map.inj[t].v) w[x - 1] = kB;
            words.push_back(std::move(w));
        }
        out.add(key(a, as.target, std::move(words)), m.scalar(1));
    }
    return out;
}

Morphism pushforward(const GSetMap& f, const MeasureSpec& m) { return transpose(pullback(f, m)); }

Morphism transpose(const Morphism& f) {
    Morphism out = Morphism::zero(f.target, f.source, f.measure);
    for (auto& [k, v] : f.coeffs) out.coeffs.emplace(k.transposed(), v);
    return out;
}

// --- composition ---------------------------------------------------------

std::vector<std::pair<Word, long>> compose_words(const Word& w, const Word& v, int index) {
    // w: slot 0 = Z, slot 1 = Y; v: slot 0 = Y, slot 1 = X
    std::vector<char> la(w.size()), ra(v.size());
    for (std::size_t i = 0; i < w.size(); ++i) la[i] = (w[i] & kR) != 0;
    for (std::size_t j = 0; j < v.size(); ++j) ra[j] = (v[j] & kL) != 0;
    std::map<Word, long, bool (*)(const Word&, const Word&)> acc(word_less);
    anchored_merges(la, ra, [&](const std::vector<std::pair<int, int>>& steps) {
        Word zx;
        OIInjection keep;
        keep.n = static_cast<int>(steps.size());
        for (std::size_t p = 0; p < steps.size(); ++p) {
            auto [i, j] = steps[p];
            Letter x = static_cast<Letter>(((i >= 0 && (w[i] & kL)) ? kL : 0) | ((j >= 0 && (v[j] & kR)) ? kR : 0));
            if (x) {
                zx.push_back(x);
                keep.v.push_back(static_cast<int>(p) + 1);
            }
        }
        int mu = mu_injection_int(keep, index);
        if (mu) acc[zx] += mu;
    });
    std::vector<std::pair<Word, long>> out;
    for (auto& [word, c] : acc)
        if (c) out.emplace_back(word, c);
    return out;
}

namespace {

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = w.size();
        for (Letter x : w) h = h * 1000003u ^ x;
        return h;
    }
};

// Words are interned so the composition cache and the accumulator work on
// fixed-size integer keys. Both tables only ever grow.
class WordCache {
public:
    std::uint32_t intern(const Word& w) {
        auto it = ids_.find(w);
        if (it != ids_.end()) return it->second;
        auto id = static_cast<std::uint32_t>(words_.size());
        words_.push_back(w);
        ids_.emplace(w, id);
        return id;
    }
    const Word& word(std::uint32_t id) const { return words_[id]; }

    const std::vector<std::pair<std::uint32_t, long>>& compose(std::uint32_t w, std::uint32_t v, int index) {
        const std::uint64_t k = (static_cast<std::uint64_t>(index) << 62) | (static_cast<std::uint64_t>(w) << 31) | v;
        auto it = composed_.find(k);
        if (it != composed_.end()) return it->second;
        std::vector<std::pair<std::uint32_t, long>> val;
        for (auto& [word, c] : compose_words(words_[w], words_[v], index)) val.emplace_back(intern(word), c);
        return composed_.emplace(k, std::move(val)).first->second;
    }

    std::mutex mu;

private:
    std::unordered_map<Word, std::uint32_t, WordHash> ids_;
    std::vector<Word> words_;
    std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint32_t, long>>> composed_;
};

WordCache& word_cache() {
    static WordCache c;
    return c;
}

struct AccKey {
    std::uint32_t z, x;
    std::array<std::uint32_t, kMaxFactors> w{};
    bool operator==(const AccKey&) const = default;
};

struct AccKeyHash {
    std::size_t operator()(const AccKey& k) const {
        std::size_t h = (static_cast<std::size_t>(k.z) << 32) ^ k.x;
        for (auto v : k.w) h = h * 0x9E3779B97F4A7C15ULL ^ v;
        return h;
    }
};

}  // namespace

Morphism compose(const Morphism& g, const Morphism& f) {
    if (!(g.source == f.target)) throw std::invalid_argument("compose: source of g differs from target of f");
    check_same(g.measure, f.measure);
    const MeasureSpec& m = g.measure;
    const int r = m.r();
    WordCache& wc = word_cache();
    std::lock_guard<std::mutex> lock(wc.mu);

    struct Entry {
        std::uint32_t outer;  // target orbit for g keys, source orbit for f keys
        std::array<std::uint32_t, kMaxFactors> w;
        const Scalar* c;
    };
    // f keys grouped by their target orbit
    std::vector<std::vector<Entry>> by_mid(f.target.size());
    for (auto& [k, v] : f.coeffs) {
        Entry e{k.parents[1], {}, &v};
        for (int t = 0; t < r; ++t) e.w[t] = wc.intern(k.words[t]);
        by_mid[k.parents[0]].push_back(e);
    }

    std::unordered_map<AccKey, Scalar, AccKeyHash> acc;
    std::vector<const std::vector<std::pair<std::uint32_t, long>>*> per(r);
    for (auto& [wk, wcoef] : g.coeffs) {
        const auto& mids = by_mid[wk.parents[1]];
        if (mids.empty()) continue;
        std::array<std::uint32_t, kMaxFactors> wid{};
        for (int t = 0; t < r; ++t) wid[t] = wc.intern(wk.words[t]);
        for (const Entry& ve : mids) {
            bool dead = false;
            for (int t = 0; t < r && !dead; ++t) {
                per[t] = &wc.compose(wid[t], ve.w[t], m.index[t]);
                dead = per[t]->empty();
            }
            if (dead) continue;
            const Scalar c = wcoef * *ve.c;
            std::array<std::size_t, kMaxFactors> idx{};
            AccKey key{wk.parents[0], ve.outer, {}};
            while (true) {
                long weight = 1;
                for (int t = 0; t < r; ++t) {
                    weight *= (*per[t])[idx[t]].second;
                    key.w[t] = (*per[t])[idx[t]].first;
                }
                Scalar term = c * Scalar(weight);
                auto [it, fresh] = acc.try_emplace(key, term);
                if (!fresh) it->second += term;
                int t = r - 1;
                while (t >= 0 && ++idx[t] == per[t]->size()) idx[t--] = 0;
                if (t < 0) break;
            }
        }
    }
    Morphism out = Morphism::zero(f.source, g.target, m);
    for (auto& [k, v] : acc) {
        if (v.is_zero()) continue;
        std::vector<Word> words;
        for (int t = 0; t < r; ++t) words.push_back(wc.word(k.w[t]));
        out.coeffs.emplace(key(k.z, k.x, std::move(words)), v.in(m.field));
    }
    return out;
}

// --- tensor / sum --------------------------------------------------------

Morphism tensor(const Morphism& f, const Morphism& g) {
    check_same(f.measure, g.measure);
    const MeasureSpec& m = f.measure;
    const int r = m.r();
    ProductObject src = ProductObject::of(f.source, g.source);
    ProductObject tgt = ProductObject::of(f.target, g.target);
    Morphism out = Morphism::zero(src.gset, tgt.gset, m);
    struct Piece {
        Word c, d, k;
    };
    for (auto& [wk, wc] : f.coeffs) {
        for (auto& [vk, vc] : g.coeffs) {
            std::vector<std::vector<Piece>> per(r);
            for (int t = 0; t < r; ++t) {
                const Word& w = wk.words[t];
                const Word& v = vk.words[t];
                std::vector<char> la(w.size(), 0), ra(v.size(), 0);
                anchored_merges(la, ra, [&](const std::vector<std::pair<int, int>>& steps) {
                    Piece p;
                    for (auto [i, j] : steps) {
                        Letter wl = i >= 0 ? w[i] : 0, vl = j >= 0 ? v[j] : 0;
                        Letter c = static_cast<Letter>((wl & kL) | ((vl & kL) << 1));
                        Letter d = static_cast<Letter>(((wl & kR) >> 1) | (vl & kR));
                        if (c) p.c.push_back(c);
                        if (d) p.d.push_back(d);
                        p.k.push_back(static_cast<Letter>((c ? kL : 0) | (d ? kR : 0)));
                    }
                    per[t].push_back(std::move(p));
                });
            }
            const Scalar coef = wc * vc;
            for_each_choice(per, [&](const std::vector<const Piece*>& pick) {
                Component c{{wk.parents[0], vk.parents[0]}, {}}, d{{wk.parents[1], vk.parents[1]}, {}};
                std::vector<Word> kw;
                for (auto* p : pick) {
                    c.words.push_back(p->c);
                    d.words.push_back(p->d);
                    kw.push_back(p->k);
                }
                out.add(key(tgt.find(c), src.find(d), std::move(kw)), coef);
            });
        }
    }
    return out;
}

Morphism direct_sum(const Morphism& f, const Morphism& g) {
    check_same(f.measure, g.measure);
    Morphism out = Morphism::zero(concat(f.source, g.source), concat(f.target, g.target), f.measure);
    for (auto& [k, v] : f.coeffs) out.coeffs.emplace(k, v);
    const auto dt = static_cast<std::uint32_t>(f.target.size()), ds = static_cast<std::uint32_t>(f.source.size());
    for (auto& [k, v] : g.coeffs) {
        Component s = k;
        s.parents[0] += dt;
        s.parents[1] += ds;
        out.coeffs.emplace(std::move(s), v);
    }
    return out;
}

Scalar trace(const Morphism& f) {
    if (!(f.source == f.target)) throw std::invalid_argument("trace of a non-endomorphism");
    Scalar s = f.measure.scalar(0);
    for (auto& [k, v] : f.coeffs)
        if (k.is_diagonal()) s += v * f.measure.scalar(mu_symbol_int(f.source[k.parents[0]], f.measure));
    return s;
}

Scalar dim(const GSet& x, const MeasureSpec& m) { return mu_object(x, m); }

AlgebraStructure algebra_structure(const GSet& x, const MeasureSpec& m) {
    GSetMap bang = GSetMap::to_point(x);
    ProductObject xx = ProductObject::of(x, x);
    GSetMap diag{x, xx.gset, {}};
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::vector<Word> w;
        for (int t = 0; t < x.r; ++t) w.emplace_back(x[i][t], kB);
        std::size_t j = xx.find(key(i, i, w));
        diag.assign.push_back({j, TransitiveMap::identity(x[i])});
    }
    return {pullback(bang, m), pullback(diag, m), pushforward(bang, m)};
}

// --- pairing and solving -------------------------------------------------

Matrix gram_matrix(const GSet& x, const GSet& y, const MeasureSpec& m) {
    auto zs = hom_basis(x, y);  // X -> Y
    auto ws = hom_basis(y, x);  // Y -> X
    Matrix g(zs.size(), ws.size(), m.field);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        Morphism az = Morphism::basis(x, y, m, zs[i]);
        for (std::size_t j = 0; j < ws.size(); ++j) {
            Morphism aw = Morphism::basis(y, x, m, ws[j]);
            g.at(i, j) = trace(compose(az, aw));
        }
    }
    return g;
}

LeftInverse solve_left_inverse(const Morphism& f) {
    // unknown g: target(f) -> source(f), g o f = id
    const GSet& x = f.source;
    const GSet& y = f.target;
    const MeasureSpec& m = f.measure;
    auto unknowns = hom_basis(y, x);
    auto rows = hom_basis(x, x);
    std::unordered_map<Component, std::size_t, ComponentHash> row_of;
    for (std::size_t i = 0; i < rows.size(); ++i) row_of.emplace(rows[i], i);

    LeftInverse res;
    res.unknowns = unknowns.size();
    res.equations = rows.size();
    Matrix a(rows.size(), unknowns.size(), m.field);
    for (std::size_t j = 0; j < unknowns.size(); ++j) {
        Morphism gf = compose(Morphism::basis(y, x, m, unknowns[j]), f);
        for (auto& [k, v] : gf.coeffs) a.at(row_of.at(k), j) = v;
    }
    std::vector<Scalar> b(rows.size(), m.scalar(0));
    for (auto& [k, v] : Morphism::identity(x, m).coeffs) b[row_of.at(k)] = v;
    auto sol = solve(a, b);
    if (!sol.solvable) {
        res.certificate = sol.certificate;
        return res;
    }
    Morphism g = Morphism::zero(y, x, m);
    for (std::size_t j = 0; j < unknowns.size(); ++j) g.add(unknowns[j], sol.x[j]);
    if (compose(g, f) != Morphism::identity(x, m)) throw std::logic_error("left inverse failed verification");
    res.witness = std::move(g);
    return res;
}

LawReport check_category_laws(const MeasureSpec& m, int bound) {
    if (m.r() != 1) throw std::invalid_argument("category laws are swept in single-factor categories");
    LawReport rep;
    auto obj = [](int n) { return GSet::single(OrbitSymbol::basic(1, 0, n)); };
    const int k = bound + 1;
    std::vector<std::vector<std::vector<Morphism>>> B(k, std::vector<std::vector<Morphism>>(k));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            for (auto& z : hom_basis(obj(a), obj(b))) B[a][b].push_back(Morphism::basis(obj(a), obj(b), m, z));
    auto name = [](const Morphism& f) {
        return f.coeffs.begin()->first.text() + ":" + f.source.str() + "->" + f.target.str();
    };
    for (int a = 0; a < k; ++a) {
        Morphism ida = Morphism::identity(obj(a), m);
        for (int b = 0; b < k; ++b) {
            Morphism idb = Morphism::identity(obj(b), m);
            for (auto& f : B[a][b]) {
                ++rep.identities;
                if (compose(f, ida) != f || compose(idb, f) != f) {
                    rep.pass = false;
                    rep.counterexample = "identity law fails for " + name(f);
                    return rep;
                }
            }
        }
    }
    // P[a][b][c][i][j] = B[b][c][j] o B[a][b][i]
    std::vector<std::vector<std::vector<std::vector<std::vector<Morphism>>>>> P(
        k, std::vector<std::vector<std::vector<std::vector<Morphism>>>>(k, std::vector<std::vector<std::vector<Morphism>>>(k)));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            for (int c = 0; c < k; ++c) {
                auto& slot = P[a][b][c];
                slot.resize(B[a][b].size());
                for (std::size_t i = 0; i < B[a][b].size(); ++i)
                    for (auto& g : B[b][c]) slot[i].push_back(compose(g, B[a][b][i]));
            }
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            for (int c = 0; c < k; ++c)
                for (int d = 0; d < k; ++d)
                    for (std::size_t i = 0; i < B[a][b].size(); ++i)
                        for (std::size_t j = 0; j < B[b][c].size(); ++j)
                            for (std::size_t l = 0; l < B[c][d].size(); ++l) {
                                ++rep.triples;
                                const Morphism& f = B[a][b][i];
                                const Morphism& h = B[c][d][l];
                                if (compose(P[b][c][d][j][l], f) != compose(h, P[a][b][c][i][j])) {
                                    rep.pass = false;
                                    rep.counterexample = "associativity fails for h = " + name(h) + ", g = " +
                                                         name(B[b][c][j]) + ", f = " + name(f);
                                    return rep;
                                }
                            }
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            for (std::size_t i = 0; i < B[a][b].size(); ++i)
                for (std::size_t j = 0; j < B[b][a].size(); ++j) {
                    ++rep.traces;
                    // P[a][b][a][i][j] = g o f and P[b][a][b][j][i] = f o g
                    if (trace(P[a][b][a][i][j]) != trace(P[b][a][b][j][i])) {
                        rep.pass = false;
                        rep.counterexample = "trace(g o f) != trace(f o g) for f = " + name(B[a][b][i]) + ", g = " +
                                             name(B[b][a][j]);
                        return rep;
                    }
                }
    return rep;
}

}  // namespace delannoy
