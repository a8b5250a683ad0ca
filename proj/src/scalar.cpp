#include "delannoy/scalar.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace delannoy {

namespace {

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

}  // namespace

std::string Field::name() const { return p == 0 ? "Q" : "F" + std::to_string(p); }

Field Field::parse(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::toupper(c));
    if (s == "Q" || s == "QQ" || s == "RATIONALS" || s == "0") return {};
    std::string digits = s;
    if (digits.rfind("GF(", 0) == 0 && digits.back() == ')') digits = digits.substr(3, digits.size() - 4);
    else if (digits.rfind("FP", 0) == 0) digits = digits.substr(2);
    else if (digits.rfind("F", 0) == 0) digits = digits.substr(1);
    if (digits.empty() || digits.size() > 18) throw std::invalid_argument("unknown field '" + raw + "'");
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("unknown field '" + raw + "'");
    std::uint64_t p = std::stoull(digits);
    if (!is_prime(p) || p >= (1ULL << 62)) throw std::invalid_argument("field characteristic must be a prime below 2^62: '" + raw + "'");
    return Field{p};
}

Field Field::from_env() {
    const char* v = std::getenv("DELANNOY_FIELD");
    if (!v || !*v) return {};
    return parse(v);
}

std::uint64_t Scalar::reduce(const mpq_class& q, std::uint64_t p) {
    mpz_class pz(std::to_string(p));
    mpz_class num = q.get_num() % pz;
    if (num < 0) num += pz;
    mpz_class den = q.get_den() % pz;
    if (den == 0) throw std::domain_error("denominator divisible by the field characteristic");
    std::uint64_t n = std::stoull(num.get_str()), d = std::stoull(den.get_str());
    return mulmod(n, powmod(d, p - 2, p), p);
}

Scalar Scalar::from_q(const mpq_class& q) {
    Scalar s;
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) s.s_ = q.get_num().get_si();
    else s.big_ = std::make_shared<const mpq_class>(q);
    return s;
}

Scalar::Scalar(const mpq_class& q) { *this = from_q(q); }

Scalar::Scalar(long v, const Field& f) : s_(v) {
    if (!f.rational()) *this = in(f);
}

Scalar Scalar::in(const Field& f) const {
    if (f.p == p_) return *this;
    if (p_ != 0) throw std::domain_error("cannot move an F_p element into another field");
    Scalar s;
    s.p_ = f.p;
    if (big_) {
        s.r_ = reduce(*big_, f.p);
    } else {
        std::int64_t m = s_ % static_cast<std::int64_t>(f.p);
        s.r_ = static_cast<std::uint64_t>(m < 0 ? m + static_cast<std::int64_t>(f.p) : m);
    }
    return s;
}

Scalar Scalar::parse(const std::string& s, const Field& f) {
    if (s.empty()) throw std::invalid_argument("empty scalar");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    bool slash = false;
    if (i >= s.size()) throw std::invalid_argument("malformed scalar '" + s + "'");
    for (std::size_t k = i; k < s.size(); ++k) {
        if (s[k] == '/' && !slash && k > i && k + 1 < s.size()) { slash = true; continue; }
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) throw std::invalid_argument("malformed scalar '" + s + "'");
    }
    std::string body = s[0] == '+' ? s.substr(1) : s;
    mpq_class q(body);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q.canonicalize();
    return from_q(q).in(f);
}

void Scalar::unify(Scalar& a, Scalar& b) {
    if (a.p_ == b.p_) return;
    if (a.p_ == 0) a = a.in(Field{b.p_});
    else if (b.p_ == 0) b = b.in(Field{a.p_});
    else throw std::domain_error("mixing scalars from different prime fields");
}

bool Scalar::is_zero() const { return p_ ? r_ == 0 : (!big_ && s_ == 0); }
bool Scalar::is_one() const { return p_ ? r_ == 1 : (!big_ && s_ == 1); }

Scalar Scalar::operator+(const Scalar& o) const {
    if (p_ == 0 && o.p_ == 0) {
        std::int64_t v;
        if (!big_ && !o.big_ && !__builtin_add_overflow(s_, o.s_, &v)) {
            Scalar a;
            a.s_ = v;
            return a;
        }
        return from_q(q() + o.q());
    }
    Scalar a = *this, b = o;
    unify(a, b);
    a.r_ = (a.r_ + b.r_) % a.p_;
    return a;
}

Scalar Scalar::operator-() const {
    Scalar a = *this;
    if (p_) {
        a.r_ = (p_ - r_) % p_;
    } else if (big_ || s_ == INT64_MIN) {
        return from_q(-q());
    } else {
        a.s_ = -s_;
    }
    return a;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    if (p_ == 0 && o.p_ == 0) {
        std::int64_t v;
        if (!big_ && !o.big_ && !__builtin_mul_overflow(s_, o.s_, &v)) {
            Scalar a;
            a.s_ = v;
            return a;
        }
        return from_q(q() * o.q());
    }
    Scalar a = *this, b = o;
    unify(a, b);
    a.r_ = mulmod(a.r_, b.r_, a.p_);
    return a;
}

Scalar Scalar::operator/(const Scalar& o) const {
    Scalar a = *this, b = o;
    unify(a, b);
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (a.p_) {
        a.r_ = mulmod(a.r_, powmod(b.r_, a.p_ - 2, a.p_), a.p_);
        return a;
    }
    return from_q(a.q() / b.q());
}

bool Scalar::operator==(const Scalar& o) const {
    if (p_ == 0 && o.p_ == 0) {
        if (!big_ && !o.big_) return s_ == o.s_;
        if (big_ && o.big_) return *big_ == *o.big_;
        return false;  // normalized: a big value is never a machine integer
    }
    Scalar a = *this, b = o;
    unify(a, b);
    return a.r_ == b.r_;
}

std::string Scalar::str() const {
    if (p_) return std::to_string(r_);
    return big_ ? big_->get_str() : std::to_string(s_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace delannoy
