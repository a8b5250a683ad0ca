#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace delannoy {

// Coefficient field: p == 0 means the rationals, otherwise F_p (p prime).
struct Field {
    std::uint64_t p = 0;

    bool rational() const { return p == 0; }
    std::string name() const;
    bool operator==(const Field&) const = default;

    // "Q", "QQ", "F7", "GF(7)", "7"
    static Field parse(const std::string& s);
    // DELANNOY_FIELD, rationals when unset
    static Field from_env();
};

// Exact element of Q or F_p. A rational with p-integral value combines with
// an F_p element by reduction, so integer constants need no field context.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : s_(v) {}  // NOLINT: integer literals are scalars
    Scalar(long v, const Field& f);
    explicit Scalar(const mpq_class& q);

    static Scalar parse(const std::string& s, const Field& f);

    std::uint64_t modulus() const { return p_; }
    bool is_zero() const;
    bool is_one() const;
    Scalar in(const Field& f) const;  // reduce into f

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const;

private:
    // Over Q a value is a machine integer s_ unless big_ is set; GMP is only
    // touched once a value leaves the int64 range or stops being integral.
    std::uint64_t p_ = 0;
    std::int64_t s_ = 0;
    std::uint64_t r_ = 0;  // residue when p_ != 0
    std::shared_ptr<const mpq_class> big_;

    mpq_class q() const { return big_ ? *big_ : mpq_class(static_cast<long>(s_)); }
    static Scalar from_q(const mpq_class& q);
    static std::uint64_t reduce(const mpq_class& q, std::uint64_t p);
    static void unify(Scalar& a, Scalar& b);
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace delannoy
