#include "crsym/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace crsym {

Rational parse_rational(const std::string &text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        throw std::invalid_argument("empty rational");
    auto valid_int = [](const std::string &t, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+'))
            ++i;
        if (i == t.size())
            return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        throw std::invalid_argument("malformed rational '" + text + "'");
    if (num[0] == '+')
        num.erase(0, 1);
    mpz_class n(num), d(den);
    if (d == 0)
        throw std::invalid_argument("zero denominator in '" + text + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational &q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_zero(const Rational &q) { return sgn(q) == 0; }

Scalar Scalar::inverse() const
{
    Rational n = norm();
    if (sgn(n) == 0)
        throw std::domain_error("division by zero scalar");
    return Scalar(re_ / n, -im_ / n);
}

Scalar &Scalar::operator+=(const Scalar &o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Scalar &Scalar::operator-=(const Scalar &o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Scalar &Scalar::operator*=(const Scalar &o)
{
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

Scalar &Scalar::operator/=(const Scalar &o)
{
    if (sgn(o.im_) == 0) {
        if (sgn(o.re_) == 0)
            throw std::domain_error("division by zero scalar");
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

std::string Scalar::to_string() const
{
    if (sgn(im_) == 0)
        return crsym::to_string(re_);
    auto imag = [](const Rational &q) { return q == 1 ? std::string("i") : crsym::to_string(q) + "i"; };
    if (sgn(re_) == 0)
        return sgn(im_) < 0 ? "-" + imag(-im_) : imag(im_);
    std::string s = "(" + crsym::to_string(re_);
    s += sgn(im_) < 0 ? "-" : "+";
    s += imag(abs(im_)) + ")";
    return s;
}

std::size_t Scalar::hash() const
{
    std::hash<std::string> h;
    return h(crsym::to_string(re_)) * 31u ^ h(crsym::to_string(im_));
}

std::ostream &operator<<(std::ostream &os, const Scalar &s) { return os << s.to_string(); }

} // namespace crsym
