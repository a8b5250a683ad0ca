#include <algorithm>
#include <functional>
#include <sstream>

#include "delannoy/order.hpp"

namespace delannoy {

namespace {

// Components of x * y with parents (i, j).
std::vector<Component> pair_components(const OrbitSymbol& x, const OrbitSymbol& y, std::uint32_t i, std::uint32_t j) {
    std::vector<std::vector<Word>> per(x.r);
    for (int t = 0; t < x.r; ++t) per[t] = merge_words(x[t], y[t]);
    std::vector<Component> out;
    for_each_choice(per, [&](const std::vector<const Word*>& pick) {
        Component c{{i, j}, {}};
        for (auto* w : pick) c.words.push_back(*w);
        out.push_back(std::move(c));
    });
    return out;
}

// The (i,j) projection of c as a two-slot component.
Component pair_of(const Component& c, int i, int j) {
    Component p;
    p.parents = {c.parents[i], c.parents[j]};
    p.words.resize(c.words.size());
    for (std::size_t t = 0; t < c.words.size(); ++t) {
        Word& w = p.words[t];
        w.reserve(c.words[t].size());
        for (Letter x : c.words[t]) {
            Letter y = static_cast<Letter>(((x >> i) & 1) | (((x >> j) & 1) << 1));
            if (y) w.push_back(y);
        }
    }
    return p;
}

// Components of X x X x X obtained by gluing p's slot 1 to q's slot 0.
template <class F>
void glue_pairs(const Component& p, const Component& q, F&& emit) {
    const int r = p.r();
    std::vector<std::vector<Word>> per(r);
    for (int t = 0; t < r; ++t) {
        const Word& a = p.words[t];
        const Word& b = q.words[t];
        std::vector<char> la(a.size()), ra(b.size());
        for (std::size_t i = 0; i < a.size(); ++i) la[i] = (a[i] & kR) != 0;
        for (std::size_t j = 0; j < b.size(); ++j) ra[j] = (b[j] & kL) != 0;
        anchored_merges(la, ra, [&](const std::vector<std::pair<int, int>>& steps) {
            Word w;
            w.reserve(steps.size());
            for (auto [i, j] : steps) {
                Letter x = i >= 0 ? a[i] : 0;  // bits 0,1
                Letter y = j >= 0 ? b[j] : 0;
                w.push_back(static_cast<Letter>(x | ((y & kL) << 1) | ((y & kR) << 1)));
            }
            per[t].push_back(std::move(w));
        });
    }
    for_each_choice(per, [&](const std::vector<const Word*>& pick) {
        Component c{{p.parents[0], p.parents[1], q.parents[1]}, {}};
        for (auto* w : pick) c.words.push_back(*w);
        emit(c);
    });
}

// Lexicographic relation on components whose slot k is ordered by orders[k],
// comparing slots in the given order.
std::set<Component> lex_relation(const std::vector<Component>& comps, const std::vector<int>& slot_order,
                                 const std::vector<const OrderedGSet*>& orders, const EvalLimits& lim) {
    std::set<Component> less;
    if (comps.empty()) return less;
    const int s = comps[0].slots();
    std::vector<std::unordered_set<Component, ComponentHash>> lessh;
    for (auto* o : orders) lessh.emplace_back(o->less.begin(), o->less.end());
    for (std::size_t i = 0; i < comps.size(); ++i) {
        for (std::size_t j = 0; j < comps.size(); ++j) {
            auto pairs = pair_components(comps[i].ambient(), comps[j].ambient(), static_cast<std::uint32_t>(i),
                                         static_cast<std::uint32_t>(j));
            for (auto& p : pairs) {
                Component flat = flatten(p, {&comps[i], &comps[j]});
                bool is_less = false;
                for (int k : slot_order) {
                    Component q = pair_of(flat, k, s + k);
                    if (q.is_diagonal()) continue;
                    is_less = lessh[k].count(q) != 0;
                    break;
                }
                if (is_less) {
                    less.insert(std::move(p));
                    if (less.size() > lim.max_relation) throw BudgetExceeded("relation too large");
                }
            }
        }
    }
    return less;
}

}  // namespace

// --- constructors --------------------------------------------------------

OrderedGSet ordered_zero(int r) { return OrderedGSet{GSet{r, {}}, {}}; }

OrderedGSet ordered_unit(int r) { return OrderedGSet{GSet::point(r), {}}; }

OrderedGSet ordered_gen(int r, int t) {
    OrderedGSet o{GSet::single(OrbitSymbol::basic(r, t)), {}};
    Component c{{0, 0}, std::vector<Word>(r)};
    c.words[t] = {kL, kR};
    o.less.insert(c);
    return o;
}

OrderedGSet reverse(const OrderedGSet& a) {
    OrderedGSet o{a.carrier, {}};
    for (auto& c : a.less) o.less.insert(c.transposed());
    return o;
}

OrderedGSet lex_sum(const OrderedGSet& a, const OrderedGSet& b, const EvalLimits& lim) {
    OrderedGSet o{concat(a.carrier, b.carrier), a.less};
    const auto off = static_cast<std::uint32_t>(a.carrier.size());
    for (auto c : b.less) {
        c.parents[0] += off;
        c.parents[1] += off;
        o.less.insert(std::move(c));
    }
    for (std::uint32_t i = 0; i < a.carrier.size(); ++i)
        for (std::uint32_t j = 0; j < b.carrier.size(); ++j)
            for (auto& c : pair_components(a.carrier[i], b.carrier[j], i, off + j)) o.less.insert(std::move(c));
    if (o.carrier.size() > lim.max_orbits || o.less.size() > lim.max_relation) throw BudgetExceeded("sum too large");
    return o;
}

OrderedGSet lex_prod(const OrderedGSet& a, const OrderedGSet& b, const EvalLimits& lim) {
    if (a.r() != b.r()) throw std::invalid_argument("group shape mismatch");
    OrderedGSet o{GSet{a.r(), {}}, {}};
    if (a.carrier.empty() || b.carrier.empty()) return o;
    auto comps = product_decompose({a.carrier, b.carrier});
    if (comps.size() > lim.max_orbits) throw BudgetExceeded("product carrier too large");
    for (auto& c : comps) o.carrier.orbits.push_back(c.ambient());
    o.less = lex_relation(comps, {0, 1}, {&a, &b}, lim);
    return o;
}

OrderedGSet restrict_to(const OrderedGSet& a, const std::vector<std::size_t>& orbits) {
    std::vector<long> pos(a.carrier.size(), -1);
    OrderedGSet o{GSet{a.r(), {}}, {}};
    for (std::size_t k = 0; k < orbits.size(); ++k) {
        if (orbits[k] >= a.carrier.size() || pos[orbits[k]] >= 0) throw std::invalid_argument("bad orbit selection");
        pos[orbits[k]] = static_cast<long>(k);
        o.carrier.orbits.push_back(a.carrier[orbits[k]]);
    }
    for (auto c : a.less) {
        if (pos[c.parents[0]] < 0 || pos[c.parents[1]] < 0) continue;
        c.parents = {static_cast<std::uint32_t>(pos[c.parents[0]]), static_cast<std::uint32_t>(pos[c.parents[1]])};
        o.less.insert(std::move(c));
    }
    return o;
}

OrderedGSet evaluate(const ExprPtr& e, int r, const EvalLimits& lim, const Substitution* subst) {
    using K = OrderExpr::Kind;
    if (subst && !subst->empty()) r = subst->begin()->second.r();
    switch (e->kind) {
        case K::Zero: return ordered_zero(r);
        case K::Unit: return ordered_unit(r);
        case K::Gen: {
            if (subst) {
                auto it = subst->find(e->factor);
                if (it != subst->end()) return it->second;
            }
            if (e->factor >= r) throw std::invalid_argument("generator factor " + std::to_string(e->factor + 1) +
                                                            " exceeds group shape " + std::to_string(r));
            return ordered_gen(r, e->factor);
        }
        case K::Rev: return reverse(evaluate(e->kids[0], r, lim, subst));
        case K::Sum: return lex_sum(evaluate(e->kids[0], r, lim, subst), evaluate(e->kids[1], r, lim, subst), lim);
        case K::Prod: return lex_prod(evaluate(e->kids[0], r, lim, subst), evaluate(e->kids[1], r, lim, subst), lim);
        case K::Tup: return tuples_ordered(evaluate(e->kids[0], r, lim, subst), e->n, e->perm, lim);
    }
    throw std::invalid_argument("malformed expression");
}

// --- verification --------------------------------------------------------

OrderReport verify(const OrderedGSet& o) {
    OrderReport rep;
    const GSet& x = o.carrier;
    for (auto& c : o.less) {
        bool ok = c.slots() == 2 && c.r() == x.r && c.parents[0] < x.size() && c.parents[1] < x.size();
        if (ok) ok = c.slot_symbol(0) == x[c.parents[0]] && c.slot_symbol(1) == x[c.parents[1]];
        if (ok)
            for (auto& w : c.words)
                for (Letter l : w) ok = ok && (l == kL || l == kR || l == kB);
        if (!ok) {
            rep.pass = false;
            rep.failure = "relation entry is not a component of X x X: " + c.text();
            return rep;
        }
    }
    for (std::uint32_t i = 0; i < x.size(); ++i)
        for (std::uint32_t j = 0; j < x.size(); ++j)
            for (auto& c : pair_components(x[i], x[j], i, j)) {
                ++rep.pairs_checked;
                int hits = int(o.contains(c)) + int(c.is_diagonal()) + int(o.contains(c.transposed()));
                if (hits != 1) {
                    rep.pass = false;
                    rep.failure = "totality fails on component " + std::to_string(i) + "x" + std::to_string(j) + " " +
                                  c.text() + " (" + std::to_string(hits) + " of less/diagonal/transpose)";
                    return rep;
                }
            }
    std::vector<std::vector<const Component*>> by_first(x.size());
    for (auto& c : o.less) by_first[c.parents[0]].push_back(&c);
    for (auto& p : o.less) {
        for (auto* q : by_first[p.parents[1]]) {
            bool bad = false;
            std::string where;
            glue_pairs(p, *q, [&](const Component& c) {
                ++rep.triples_checked;
                if (bad) return;
                if (!o.contains(pair_of(c, 0, 2))) {
                    bad = true;
                    where = c.text();
                }
            });
            if (bad) {
                rep.pass = false;
                rep.failure = "transitivity fails on triple " + std::to_string(p.parents[0]) + "," +
                              std::to_string(p.parents[1]) + "," + std::to_string(q->parents[1]) + " " + where;
                return rep;
            }
        }
    }
    return rep;
}

// --- tuple powers --------------------------------------------------------

std::size_t TuplePower::find(const Component& c) const {
    auto it = index.find(c);
    if (it == index.end()) throw std::logic_error("component not in tuple power: " + c.text());
    return it->second;
}

GSetMap TuplePower::along(const OIInjection& j, const TuplePower& lower) const {
    if (j.n != n || j.m() != lower.n) throw std::invalid_argument("injection does not match tuple powers");
    GSetMap f{gset, lower.gset, {}};
    f.assign.reserve(comps.size());
    std::vector<int> slots;
    for (int x : j.v) slots.push_back(x - 1);
    for (auto& c : comps) {
        if (slots.empty()) {
            f.assign.push_back({0, TransitiveMap::to_point(c.ambient())});
            continue;
        }
        auto p = project_component(c, slots);
        f.assign.push_back({lower.find(p.comp), std::move(p.map)});
    }
    return f;
}

GSetMap TuplePower::coordinate(int k, const GSet& carrier) const {
    GSetMap f{gset, carrier, {}};
    for (auto& c : comps) f.assign.push_back({c.parents.at(k - 1), c.slot_map(k - 1)});
    return f;
}

TuplePower tuples(const OrderedGSet& o, int n, const EvalLimits& lim) {
    if (n < 0) throw std::invalid_argument("negative tuple power");
    if (n > kMaxSlots) throw std::invalid_argument("tuple power too large");
    const int r = o.r();
    TuplePower tp;
    tp.n = n;
    tp.gset.r = r;
    if (n == 0) {
        tp.comps.push_back(Component{{}, std::vector<Word>(r)});
    } else {
        std::unordered_set<Component, ComponentHash> lessh(o.less.begin(), o.less.end());
        std::vector<Component> cur;
        for (std::uint32_t i = 0; i < o.carrier.size(); ++i) {
            Component c{{i}, {}};
            for (int t = 0; t < r; ++t) c.words.emplace_back(o.carrier[i][t], Letter{1});
            cur.push_back(std::move(c));
        }
        for (int k = 1; k < n && !cur.empty(); ++k) {
            std::vector<Component> next;
            const Letter bit = static_cast<Letter>(1u << k);
            for (auto& c : cur) {
                for (std::uint32_t oi = 0; oi < o.carrier.size(); ++oi) {
                    const auto& sym = o.carrier[oi];
                    std::vector<std::vector<Word>> per(r);
                    for (int t = 0; t < r; ++t) {
                        std::vector<char> la(c.words[t].size(), 0), ra(sym[t], 0);
                        anchored_merges(la, ra, [&](const std::vector<std::pair<int, int>>& steps) {
                            Word w;
                            w.reserve(steps.size());
                            for (auto [i, j] : steps)
                                w.push_back(static_cast<Letter>((i >= 0 ? c.words[t][i] : 0) | (j >= 0 ? bit : 0)));
                            per[t].push_back(std::move(w));
                        });
                    }
                    for_each_choice(per, [&](const std::vector<const Word*>& pick) {
                        Component d{c.parents, {}};
                        d.parents.push_back(oi);
                        for (auto* w : pick) d.words.push_back(*w);
                        if (!lessh.count(pair_of(d, k - 1, k))) return;
                        for (int i = 0; i + 1 < k; ++i)
                            if (!lessh.count(pair_of(d, i, k))) return;
                        next.push_back(std::move(d));
                    });
                    if (next.size() > lim.max_orbits) throw BudgetExceeded("tuple power too large");
                }
            }
            cur = std::move(next);
        }
        tp.comps = std::move(cur);
    }
    std::sort(tp.comps.begin(), tp.comps.end());
    tp.index.reserve(tp.comps.size());
    for (std::size_t i = 0; i < tp.comps.size(); ++i) {
        tp.gset.orbits.push_back(tp.comps[i].ambient());
        tp.index.emplace(tp.comps[i], i);
    }
    return tp;
}

OrderedGSet tuples_ordered(const OrderedGSet& o, int n, const std::vector<int>& perm, const EvalLimits& lim) {
    std::vector<int> order;
    if (perm.empty())
        for (int k = 0; k < n; ++k) order.push_back(k);
    else
        for (int x : perm) order.push_back(x - 1);
    if (static_cast<int>(order.size()) != n) throw std::invalid_argument("permutation length differs from tuple power");
    TuplePower tp = tuples(o, n, lim);
    OrderedGSet out{tp.gset, {}};
    std::vector<const OrderedGSet*> orders(n, &o);
    if (n > 0) out.less = lex_relation(tp.comps, order, orders, lim);
    return out;
}

// --- order schemes -------------------------------------------------------

Preorder Preorder::discrete(int s) {
    Preorder p{s, std::vector<std::vector<char>>(s, std::vector<char>(s, 0))};
    for (int i = 0; i < s; ++i) p.le[i][i] = 1;
    return p;
}

Preorder Preorder::chain(int s) {
    Preorder p = discrete(s);
    for (int i = 0; i < s; ++i)
        for (int j = i; j < s; ++j) p.le[i][j] = 1;
    return p;
}

Preorder Preorder::from_blocks(const std::vector<int>& rank) {
    const int s = static_cast<int>(rank.size());
    Preorder p = discrete(s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) p.le[i][j] = rank[i] <= rank[j];
    return p;
}

bool Preorder::valid() const {
    if (static_cast<int>(le.size()) != s) return false;
    for (int i = 0; i < s; ++i) {
        if (static_cast<int>(le[i].size()) != s || !le[i][i]) return false;
        for (int j = 0; j < s; ++j)
            for (int k = 0; k < s; ++k)
                if (le[i][j] && le[j][k] && !le[i][k]) return false;
    }
    return true;
}

std::vector<Preorder> total_preorders(int s) {
    std::vector<Preorder> out;
    std::vector<int> rank(s, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == s) {
            int mx = -1;
            for (int x : rank) mx = std::max(mx, x);
            for (int v = 0; v <= mx; ++v)
                if (std::find(rank.begin(), rank.end(), v) == rank.end()) return;
            out.push_back(Preorder::from_blocks(rank));
            return;
        }
        for (int v = 0; v < s; ++v) {
            rank[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

std::vector<Component> order_scheme_subobject(const OrderedGSet& o, const Preorder& S) {
    if (!S.valid()) throw std::invalid_argument("invalid order scheme: not a preorder");
    if (S.s == 0) return {Component{{}, std::vector<Word>(o.r())}};
    if (o.carrier.empty()) return {};
    std::unordered_set<Component, ComponentHash> lessh(o.less.begin(), o.less.end());
    std::vector<Component> out;
    for (auto& c : product_decompose(std::vector<GSet>(S.s, o.carrier))) {
        bool ok = true;
        for (int i = 0; i < S.s && ok; ++i)
            for (int j = 0; j < S.s && ok; ++j) {
                if (i == j || !S.le[i][j]) continue;
                Component p = pair_of(c, i, j);
                if (S.le[j][i]) ok = p.is_diagonal();
                else ok = lessh.count(p) != 0;
            }
        if (ok) out.push_back(std::move(c));
    }
    return out;
}

// --- isomorphism ---------------------------------------------------------

std::optional<GSetMap> ordered_iso(const OrderedGSet& a, const OrderedGSet& b) {
    if (a.r() != b.r() || a.carrier.size() != b.carrier.size() || !a.carrier.isomorphic(b.carrier)) return std::nullopt;
    const std::size_t n = a.carrier.size();
    using Cell = std::vector<std::vector<Word>>;
    auto cells = [n](const OrderedGSet& o) {
        std::map<std::pair<std::uint32_t, std::uint32_t>, Cell> m;
        for (auto& c : o.less) m[{c.parents[0], c.parents[1]}].push_back(c.words);
        for (auto& [k, v] : m) std::sort(v.begin(), v.end());
        (void)n;
        return m;
    };
    auto ca = cells(a), cb = cells(b);
    static const Cell empty;
    auto get = [](const std::map<std::pair<std::uint32_t, std::uint32_t>, Cell>& m, std::uint32_t i, std::uint32_t j)
        -> const Cell& {
        auto it = m.find({i, j});
        return it == m.end() ? empty : it->second;
    };
    std::vector<std::uint32_t> pi(n);
    std::vector<char> used(n, 0);
    std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
        if (k == n) return true;
        for (std::uint32_t c = 0; c < n; ++c) {
            if (used[c] || !(a.carrier[k] == b.carrier[c])) continue;
            pi[k] = c;
            bool ok = true;
            for (std::size_t i = 0; i <= k && ok; ++i) {
                const auto ki = static_cast<std::uint32_t>(k), ii = static_cast<std::uint32_t>(i);
                ok = get(ca, ii, ki) == get(cb, pi[i], c) && get(ca, ki, ii) == get(cb, c, pi[i]);
            }
            if (!ok) continue;
            used[c] = 1;
            if (rec(k + 1)) return true;
            used[c] = 0;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    GSetMap f{a.carrier, b.carrier, {}};
    for (std::size_t k = 0; k < n; ++k) f.assign.push_back({pi[k], TransitiveMap::identity(a.carrier[k])});
    return f;
}

FiniteLike finite_like(const OrderedGSet& o, int bound) {
    for (int n = 1; n <= bound; ++n)
        if (tuples(o, n).comps.empty()) return {true, n};
    return {false, -1};
}

std::string order_text(const OrderedGSet& o) {
    std::ostringstream os;
    os << "carrier " << o.carrier.str() << "\nless (" << o.less.size() << "):";
    for (auto& c : o.less) os << "\n  " << c.parents[0] << " < " << c.parents[1] << "  " << c.text();
    return os.str();
}

}  // namespace delannoy
