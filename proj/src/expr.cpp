#include <cctype>
#include <numeric>

#include "delannoy/order.hpp"

namespace delannoy {

ExprPtr OrderExpr::zero() { return std::make_shared<OrderExpr>(); }

ExprPtr OrderExpr::unit() {
    auto e = std::make_shared<OrderExpr>();
    e->kind = Kind::Unit;
    return e;
}

ExprPtr OrderExpr::gen(int factor) {
    if (factor < 0 || factor >= kMaxFactors) throw std::invalid_argument("generator factor out of range");
    auto e = std::make_shared<OrderExpr>();
    e->kind = Kind::Gen;
    e->factor = factor;
    return e;
}

ExprPtr OrderExpr::rev(ExprPtr a) {
    auto e = std::make_shared<OrderExpr>();
    e->kind = Kind::Rev;
    e->kids = {std::move(a)};
    return e;
}

ExprPtr OrderExpr::sum(ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<OrderExpr>();
    e->kind = Kind::Sum;
    e->kids = {std::move(a), std::move(b)};
    return e;
}

ExprPtr OrderExpr::prod(ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<OrderExpr>();
    e->kind = Kind::Prod;
    e->kids = {std::move(a), std::move(b)};
    return e;
}

ExprPtr OrderExpr::tup(ExprPtr a, int n, std::vector<int> perm) {
    if (n < 0) throw std::invalid_argument("tuple power must be nonnegative");
    if (perm.empty()) {
        perm.resize(n);
        std::iota(perm.begin(), perm.end(), 1);
    }
    if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permutation length differs from tuple power");
    std::vector<char> seen(n + 1, 0);
    for (int x : perm) {
        if (x < 1 || x > n || seen[x]) throw std::invalid_argument("not a permutation of [n]");
        seen[x] = 1;
    }
    auto e = std::make_shared<OrderExpr>();
    e->kind = Kind::Tup;
    e->n = n;
    e->perm = std::move(perm);
    e->kids = {std::move(a)};
    return e;
}

int OrderExpr::size() const {
    int s = 1;
    for (auto& k : kids) s += k->size();
    return s;
}

int OrderExpr::max_factor() const {
    int m = kind == Kind::Gen ? factor : -1;
    for (auto& k : kids) m = std::max(m, k->max_factor());
    return m;
}

std::string OrderExpr::str() const {
    switch (kind) {
        case Kind::Zero: return "0";
        case Kind::Unit: return "1";
        case Kind::Gen: return factor == 0 ? "R" : "R@" + std::to_string(factor + 1);
        case Kind::Rev: return "rev(" + kids[0]->str() + ")";
        case Kind::Sum: return "sum(" + kids[0]->str() + "," + kids[1]->str() + ")";
        case Kind::Prod: return "prod(" + kids[0]->str() + "," + kids[1]->str() + ")";
        case Kind::Tup: {
            std::string s = "tup(" + kids[0]->str() + "," + std::to_string(n);
            bool ident = true;
            for (int i = 0; i < n; ++i) ident = ident && perm[i] == i + 1;
            if (!ident)
                for (int x : perm) s += "," + std::to_string(x);
            return s + ")";
        }
    }
    return "?";
}

ParseError::ParseError(const std::string& what, std::size_t pos)
    : std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + what), position(pos) {}

namespace {

struct Parser {
    const std::string& s;
    std::size_t i = 0;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, i + 1); }

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    int number() {
        ws();
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) fail("expected a number");
        if (j - i > 6) fail("number too large");
        int v = std::stoi(s.substr(i, j - i));
        i = j;
        return v;
    }
    std::string ident() {
        ws();
        std::size_t j = i;
        while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) ++j;
        std::string w = s.substr(i, j - i);
        i = j;
        return w;
    }

    ExprPtr expr() {
        ws();
        if (i >= s.size()) fail("unexpected end of input");
        char c = s[i];
        if (c == '0') {
            ++i;
            return OrderExpr::zero();
        }
        if (c == '1') {
            ++i;
            return OrderExpr::unit();
        }
        std::size_t start = i;
        std::string w = ident();
        if (w == "R") {
            if (eat('@')) {
                std::size_t at = i;
                int t = number();
                if (t < 1 || t > kMaxFactors) {
                    i = at;
                    fail("factor index must be between 1 and " + std::to_string(kMaxFactors));
                }
                return OrderExpr::gen(t - 1);
            }
            return OrderExpr::gen(0);
        }
        if (w == "rev") {
            expect('(');
            auto a = expr();
            expect(')');
            return OrderExpr::rev(a);
        }
        if (w == "sum" || w == "prod") {
            expect('(');
            auto a = expr();
            expect(',');
            auto b = expr();
            expect(')');
            return w == "sum" ? OrderExpr::sum(a, b) : OrderExpr::prod(a, b);
        }
        if (w == "tup") {
            expect('(');
            auto a = expr();
            expect(',');
            int n = number();
            std::vector<int> perm;
            if (eat(',')) {
                bool bracket = eat('[');
                perm.push_back(number());
                while (eat(',')) perm.push_back(number());
                if (bracket) expect(']');
            }
            std::size_t at = i;
            expect(')');
            try {
                return OrderExpr::tup(a, n, perm);
            } catch (const std::invalid_argument& e) {
                i = at;
                fail(e.what());
            }
        }
        i = start;
        if (w.empty()) fail(std::string("unexpected character '") + c + "'");
        fail("unknown constructor '" + w + "'");
    }
};

}  // namespace

ExprPtr parse_expr(const std::string& text) {
    Parser p{text};
    auto e = p.expr();
    p.ws();
    if (p.i != text.size()) p.fail("trailing input");
    return e;
}

bool structurally_infinite(const ExprPtr& e);

namespace {

// (infinite-like, number of points when finite-like)
std::pair<bool, long> shape_of(const OrderExpr& e) {
    using K = OrderExpr::Kind;
    switch (e.kind) {
        case K::Zero: return {false, 0};
        case K::Unit: return {false, 1};
        case K::Gen: return {true, 0};
        case K::Rev: return shape_of(*e.kids[0]);
        case K::Sum: {
            auto a = shape_of(*e.kids[0]), b = shape_of(*e.kids[1]);
            return {a.first || b.first, a.second + b.second};
        }
        case K::Prod: {
            auto a = shape_of(*e.kids[0]), b = shape_of(*e.kids[1]);
            bool ane = a.first || a.second > 0, bne = b.first || b.second > 0;
            bool inf = (a.first && bne) || (b.first && ane);
            return {inf, inf ? 0 : a.second * b.second};
        }
        case K::Tup: {
            auto a = shape_of(*e.kids[0]);
            if (e.n == 0) return {false, 1};
            if (a.first) return {true, 0};
            long c = 1;  // binomial(points, n)
            for (int k = 0; k < e.n; ++k) c = c * (a.second - k) / (k + 1);
            return {false, std::max(0L, c)};
        }
    }
    return {false, 0};
}

}  // namespace

bool structurally_infinite(const ExprPtr& e) { return shape_of(*e).first; }

}  // namespace delannoy
