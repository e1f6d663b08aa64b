// Exact rational numbers.
//
// Values that fit in a pair of 64-bit machine words are kept inline; anything
// larger is promoted to a GMP rational.  Boundary and coboundary matrices of
// simplicial complexes rarely leave the inline range, so most arithmetic in a
// reduction never touches the heap.

#ifndef IHORBIT_RATIONAL_HPP
#define IHORBIT_RATIONAL_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace ihorbit
{

class Rational
{
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n) {}  // NOLINT: implicit by design of the arithmetic
    Rational(std::int64_t n, std::int64_t d);
    explicit Rational(mpq_class const& q);
    explicit Rational(mpz_class const& z);

    Rational(Rational const& other);
    Rational(Rational&&) noexcept = default;
    Rational& operator=(Rational const& other);
    Rational& operator=(Rational&&) noexcept = default;

    bool isZero() const { return !big_ && num_ == 0; }
    bool isOne() const { return !big_ && num_ == 1 && den_ == 1; }
    bool isInteger() const;
    int sign() const;

    /// Inline representation is in use (no heap allocation).
    bool isSmall() const { return !big_; }

    mpq_class toMpq() const;
    mpz_class numerator() const;
    mpz_class denominator() const;
    double toDouble() const;

    /// "p/q", or "p" for integers.
    std::string str() const;

    Rational operator-() const;
    Rational& operator+=(Rational const& o);
    Rational& operator-=(Rational const& o);
    Rational& operator*=(Rational const& o);
    Rational& operator/=(Rational const& o);

    friend Rational operator+(Rational a, Rational const& b) { return a += b; }
    friend Rational operator-(Rational a, Rational const& b) { return a -= b; }
    friend Rational operator*(Rational a, Rational const& b) { return a *= b; }
    friend Rational operator/(Rational a, Rational const& b) { return a /= b; }

    friend bool operator==(Rational const& a, Rational const& b);
    friend bool operator!=(Rational const& a, Rational const& b) { return !(a == b); }
    friend bool operator<(Rational const& a, Rational const& b);
    friend bool operator>(Rational const& a, Rational const& b) { return b < a; }
    friend bool operator<=(Rational const& a, Rational const& b) { return !(b < a); }
    friend bool operator>=(Rational const& a, Rational const& b) { return !(a < b); }

    friend std::ostream& operator<<(std::ostream& os, Rational const& r);

private:
    void setFrom128(__int128 n, __int128 d);
    void setBig(mpq_class q);
    void demote();

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;
};

Rational abs(Rational const& r);

} // namespace ihorbit

#endif // IHORBIT_RATIONAL_HPP
