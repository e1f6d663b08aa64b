#include "ihorbit/rational.hpp"

#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace ihorbit
{

namespace
{

constexpr __int128 kMin = std::numeric_limits<std::int64_t>::min();
constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

__int128 gcd128(__int128 a, __int128 b)
{
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    while (b != 0)
    {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class toMpz(__int128 v)
{
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                              : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

bool fitsInt64(mpz_class const& z)
{
    return mpz_fits_slong_p(z.get_mpz_t()) != 0;
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d)
{
    if (d == 0)
        throw std::domain_error("Rational: zero denominator");
    setFrom128(n, d);
}

Rational::Rational(mpq_class const& q)
{
    setBig(q);
}

Rational::Rational(mpz_class const& z)
{
    setBig(mpq_class(z));
}

Rational::Rational(Rational const& other)
    : num_(other.num_), den_(other.den_)
{
    if (other.big_)
        big_ = std::make_unique<mpq_class>(*other.big_);
}

Rational& Rational::operator=(Rational const& other)
{
    if (this == &other)
        return *this;
    num_ = other.num_;
    den_ = other.den_;
    if (other.big_)
        big_ = std::make_unique<mpq_class>(*other.big_);
    else
        big_.reset();
    return *this;
}

void Rational::setFrom128(__int128 n, __int128 d)
{
    if (d < 0)
    {
        n = -n;
        d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1)
    {
        n /= g;
        d /= g;
    }
    if (n == 0)
        d = 1;
    if (n >= kMin && n <= kMax && d <= kMax)
    {
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
        big_.reset();
        return;
    }
    mpq_class q(toMpz(n), toMpz(d));
    q.canonicalize();
    big_ = std::make_unique<mpq_class>(std::move(q));
    num_ = 0;
    den_ = 1;
}

void Rational::setBig(mpq_class q)
{
    q.canonicalize();
    big_ = std::make_unique<mpq_class>(std::move(q));
    demote();
}

void Rational::demote()
{
    if (!big_)
        return;
    if (fitsInt64(big_->get_num()) && fitsInt64(big_->get_den()))
    {
        num_ = big_->get_num().get_si();
        den_ = big_->get_den().get_si();
        big_.reset();
    }
}

bool Rational::isInteger() const
{
    if (big_)
        return big_->get_den() == 1;
    return den_ == 1;
}

int Rational::sign() const
{
    if (big_)
        return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::toMpq() const
{
    if (big_)
        return *big_;
    mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
    return q;
}

mpz_class Rational::numerator() const
{
    return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_));
}

mpz_class Rational::denominator() const
{
    return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_));
}

double Rational::toDouble() const
{
    if (big_)
        return big_->get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const
{
    if (big_)
        return big_->get_str();
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const
{
    if (big_ || num_ == std::numeric_limits<std::int64_t>::min())
        return Rational(mpq_class(-toMpq()));
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational& Rational::operator+=(Rational const& o)
{
    if (!big_ && !o.big_)
    {
        if (den_ == 1 && o.den_ == 1)
        {
            __int128 s = static_cast<__int128>(num_) + o.num_;
            if (s >= kMin && s <= kMax)
            {
                num_ = static_cast<std::int64_t>(s);
                return *this;
            }
        }
        __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
        __int128 d = static_cast<__int128>(den_) * o.den_;
        setFrom128(n, d);
        return *this;
    }
    setBig(toMpq() + o.toMpq());
    return *this;
}

Rational& Rational::operator-=(Rational const& o)
{
    if (!big_ && !o.big_)
    {
        if (den_ == 1 && o.den_ == 1)
        {
            __int128 s = static_cast<__int128>(num_) - o.num_;
            if (s >= kMin && s <= kMax)
            {
                num_ = static_cast<std::int64_t>(s);
                return *this;
            }
        }
        __int128 n = static_cast<__int128>(num_) * o.den_ - static_cast<__int128>(o.num_) * den_;
        __int128 d = static_cast<__int128>(den_) * o.den_;
        setFrom128(n, d);
        return *this;
    }
    setBig(toMpq() - o.toMpq());
    return *this;
}

Rational& Rational::operator*=(Rational const& o)
{
    if (!big_ && !o.big_)
    {
        __int128 n = static_cast<__int128>(num_) * o.num_;
        if (den_ == 1 && o.den_ == 1 && n >= kMin && n <= kMax)
        {
            num_ = static_cast<std::int64_t>(n);
            return *this;
        }
        setFrom128(n, static_cast<__int128>(den_) * o.den_);
        return *this;
    }
    setBig(toMpq() * o.toMpq());
    return *this;
}

Rational& Rational::operator/=(Rational const& o)
{
    if (o.isZero())
        throw std::domain_error("Rational: division by zero");
    if (!big_ && !o.big_)
    {
        setFrom128(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
        return *this;
    }
    setBig(toMpq() / o.toMpq());
    return *this;
}

bool operator==(Rational const& a, Rational const& b)
{
    if (!a.big_ && !b.big_)
        return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_)
        return *a.big_ == *b.big_;
    // canonical forms: a big value never equals a small one
    return false;
}

bool operator<(Rational const& a, Rational const& b)
{
    if (!a.big_ && !b.big_)
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    return a.toMpq() < b.toMpq();
}

std::ostream& operator<<(std::ostream& os, Rational const& r)
{
    return os << r.str();
}

Rational abs(Rational const& r)
{
    return r.sign() < 0 ? -r : r;
}

} // namespace ihorbit
