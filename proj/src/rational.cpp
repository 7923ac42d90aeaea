#include "opergr/rational.hpp"

#include "opergr/errors.hpp"

namespace opergr {

Rational::Rational(long num, long den)
{
    if (den == 0) {
        throw BadArgument("zero denominator");
    }
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::from_parts(const std::string &num, const std::string &den)
{
    mpz_class n, d;
    if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0) {
        throw BadArgument("malformed rational '" + num + "/" + den + "'");
    }
    if (d == 0) {
        throw BadArgument("zero denominator");
    }
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(std::move(q));
}

Rational Rational::parse(const std::string &text)
{
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        return from_parts(text, "1");
    }
    return from_parts(text.substr(0, slash), text.substr(slash + 1));
}

std::string Rational::str() const
{
    if (is_integer()) {
        return num_str();
    }
    return num_str() + "/" + den_str();
}

Rational &Rational::operator/=(const Rational &o)
{
    if (o.is_zero()) {
        throw NotInvertible("division by zero");
    }
    v_ /= o.v_;
    return *this;
}

Rational Rational::pow(int e) const
{
    if (e < 0) {
        return Rational(1) / pow(-e);
    }
    mpq_class out(1);
    for (int i = 0; i < e; ++i) {
        out *= v_;
    }
    return Rational(std::move(out));
}

Rational binomial(long i, long k)
{
    Rational out(1);
    for (long j = 0; j < k; ++j) {
        out *= Rational(i - j);
        out /= Rational(j + 1);
    }
    return out;
}

Rational factorial(long k)
{
    Rational out(1);
    for (long j = 2; j <= k; ++j) {
        out *= Rational(j);
    }
    return out;
}

} // namespace opergr
