#include "crsym/poly.hpp"

#include "crsym/errors.hpp"
#include "crsym/weights.hpp"

#include <algorithm>

namespace crsym {

int Monomial::exponent(Var v) const
{
    switch (v.kind) {
    case Var::Kind::Z: return alpha(v.index);
    case Var::Kind::ZBar: return beta(v.index);
    case Var::Kind::W: return p();
    case Var::Kind::WBar: return q();
    case Var::Kind::U: return l();
    }
    return 0;
}

int &Monomial::exponent(Var v)
{
    switch (v.kind) {
    case Var::Kind::Z: return alpha(v.index);
    case Var::Kind::ZBar: return beta(v.index);
    case Var::Kind::W: return p();
    case Var::Kind::WBar: return q();
    case Var::Kind::U: break;
    }
    return l();
}

int Monomial::total_degree() const
{
    int d = 0;
    for (int e : e_)
        d += e;
    return d;
}

bool Monomial::is_holomorphic() const
{
    for (int j = 0; j < n(); ++j)
        if (beta(j))
            return false;
    return q() == 0 && l() == 0;
}

bool Monomial::is_pluriharmonic() const
{
    bool has_holo = p() > 0, has_anti = q() > 0;
    for (int j = 0; j < n(); ++j) {
        has_holo = has_holo || alpha(j) > 0;
        has_anti = has_anti || beta(j) > 0;
    }
    return !(has_holo && has_anti);
}

Monomial Monomial::conj() const
{
    Monomial m(n());
    for (int j = 0; j < n(); ++j) {
        m.alpha(j) = beta(j);
        m.beta(j) = alpha(j);
    }
    m.p() = q();
    m.q() = p();
    m.l() = l();
    return m;
}

Monomial Monomial::operator*(const Monomial &o) const
{
    Monomial m(*this);
    for (std::size_t i = 0; i < e_.size(); ++i)
        m.e_[i] += o.e_[i];
    return m;
}

Rational Monomial::holomorphic_weight(const WeightVector &lambda) const
{
    Rational w = 0;
    for (int j = 0; j < n(); ++j)
        if (alpha(j))
            w += lambda[j] * alpha(j);
    return w;
}

Rational Monomial::weighted_degree(const WeightVector &lambda) const
{
    Rational w = p() + q() + l();
    for (int j = 0; j < n(); ++j)
        if (alpha(j) + beta(j))
            w += lambda[j] * (alpha(j) + beta(j));
    return w;
}

bool GrlexLess::operator()(const Monomial &a, const Monomial &b) const
{
    int da = a.total_degree(), db = b.total_degree();
    if (da != db)
        return da < db;
    return a.exponents() < b.exponents();
}

SparsePoly SparsePoly::constant(int n, const Scalar &c)
{
    SparsePoly p(n);
    p.add_term(Monomial(n), c);
    return p;
}

SparsePoly SparsePoly::variable(int n, Var v)
{
    Monomial m(n);
    m.exponent(v) = 1;
    return monomial(m);
}

SparsePoly SparsePoly::monomial(const Monomial &m, const Scalar &c)
{
    SparsePoly p(m.n());
    p.add_term(m, c);
    return p;
}

Scalar SparsePoly::coeff(const Monomial &m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
}

void SparsePoly::add_term(const Monomial &m, const Scalar &c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

SparsePoly SparsePoly::operator-() const
{
    SparsePoly r(*this);
    for (auto &[m, c] : r.terms_)
        c = -c;
    return r;
}

SparsePoly &SparsePoly::operator+=(const SparsePoly &o)
{
    if (terms_.empty())
        n_ = o.n_;
    for (const auto &[m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

SparsePoly &SparsePoly::operator-=(const SparsePoly &o)
{
    if (terms_.empty())
        n_ = o.n_;
    for (const auto &[m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

SparsePoly &SparsePoly::operator*=(const Scalar &c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[m, v] : terms_)
        v *= c;
    return *this;
}

SparsePoly operator*(const SparsePoly &a, const SparsePoly &b)
{
    SparsePoly r(std::max(a.n_, b.n_));
    for (const auto &[ma, ca] : a.terms_)
        for (const auto &[mb, cb] : b.terms_)
            r.add_term(ma * mb, ca * cb);
    return r;
}

SparsePoly SparsePoly::times_monomial(const Monomial &m, const Scalar &c) const
{
    SparsePoly r(n_);
    if (c.is_zero())
        return r;
    for (const auto &[mm, cc] : terms_)
        r.terms_.emplace_hint(r.terms_.end(), mm * m, cc * c);
    return r;
}

SparsePoly SparsePoly::pow(int k) const
{
    SparsePoly r = constant(n_, Scalar(1));
    SparsePoly base = *this;
    while (k > 0) {
        if (k & 1)
            r = r * base;
        k >>= 1;
        if (k)
            base = base * base;
    }
    return r;
}

bool SparsePoly::is_real_type() const { return conjugate(*this) == *this; }

bool SparsePoly::is_holomorphic_type() const
{
    for (const auto &[m, c] : terms_)
        if (!m.is_holomorphic())
            return false;
    return true;
}

bool SparsePoly::is_w_free() const
{
    for (const auto &[m, c] : terms_)
        if (m.p() || m.q())
            return false;
    return true;
}

bool SparsePoly::is_u_free() const
{
    for (const auto &[m, c] : terms_)
        if (m.l())
            return false;
    return true;
}

int SparsePoly::degree_in(Var v) const
{
    int d = -1;
    for (const auto &[m, c] : terms_)
        d = std::max(d, m.exponent(v));
    return d;
}

const std::pair<const Monomial, Scalar> &SparsePoly::leading_term() const
{
    if (terms_.empty())
        throw std::logic_error("leading term of zero polynomial");
    return *terms_.rbegin();
}

namespace {

void append_factor(std::string &s, const std::string &name, int e)
{
    if (e == 0)
        return;
    if (!s.empty())
        s += "*";
    s += name;
    if (e > 1)
        s += "^" + std::to_string(e);
}

std::string monomial_string(const Monomial &m)
{
    std::string s;
    for (int j = 0; j < m.n(); ++j)
        append_factor(s, "z" + std::to_string(j + 1), m.alpha(j));
    for (int j = 0; j < m.n(); ++j)
        append_factor(s, "conj(z" + std::to_string(j + 1) + ")", m.beta(j));
    append_factor(s, "w", m.p());
    append_factor(s, "conj(w)", m.q());
    append_factor(s, "u", m.l());
    return s;
}

} // namespace

std::string SparsePoly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        std::string mono = monomial_string(m);
        bool negative = c.is_real() ? sgn(c.re()) < 0 : sgn(c.re()) == 0 && sgn(c.im()) < 0;
        Scalar mag = negative ? -c : c;
        std::string coef;
        if (!mag.is_one() || mono.empty()) {
            coef = mag.to_string();
            if (mag.is_real() && mag.re().get_den() != 1 && !mono.empty())
                coef = "(" + coef + ")";
        }
        std::string term = coef;
        if (!mono.empty())
            term += (coef.empty() ? "" : "*") + mono;
        if (first)
            out += negative ? "-" + term : term;
        else
            out += (negative ? " - " : " + ") + term;
        first = false;
    }
    return out;
}

SparsePoly conjugate(const SparsePoly &p)
{
    SparsePoly r(p.n());
    for (const auto &[m, c] : p.terms())
        r.add_term(m.conj(), c.conj());
    return r;
}

SparsePoly real_part(const SparsePoly &p)
{
    return (p + conjugate(p)) * Scalar(Rational(1, 2));
}

SparsePoly imag_part(const SparsePoly &p)
{
    // (p - conj p) / (2i) = -(i/2)(p - conj p)
    return (p - conjugate(p)) * Scalar(Rational(0), Rational(-1, 2));
}

SparsePoly partial(const SparsePoly &p, Var v)
{
    SparsePoly r(p.n());
    for (const auto &[m, c] : p.terms()) {
        int e = m.exponent(v);
        if (e == 0)
            continue;
        Monomial d(m);
        d.exponent(v) = e - 1;
        r.add_term(d, c * Scalar(e));
    }
    return r;
}

SparsePoly substitute_w(const SparsePoly &p, const SparsePoly &P)
{
    if (!P.is_real_type() || !P.is_w_free() || !P.is_u_free())
        throw Error(ErrorKind::InvalidModelPolynomial,
                    "substitute_w expects a real-type polynomial free of w and u");
    const int n = std::max(p.n(), P.n());
    SparsePoly u = SparsePoly::variable(n, Var::u());
    SparsePoly iP = P * Scalar::i();
    SparsePoly wsub = u + iP, wbsub = u - iP;
    std::vector<SparsePoly> wp{SparsePoly::constant(n, Scalar(1))}, wbp{wp.front()};
    SparsePoly r(n);
    for (const auto &[m, c] : p.terms()) {
        while (static_cast<int>(wp.size()) <= m.p())
            wp.push_back(wp.back() * wsub);
        while (static_cast<int>(wbp.size()) <= m.q())
            wbp.push_back(wbp.back() * wbsub);
        Monomial rest(m);
        rest.p() = 0;
        rest.q() = 0;
        if (m.p() == 0 && m.q() == 0) {
            r.add_term(rest, c);
            continue;
        }
        SparsePoly f = wp[static_cast<std::size_t>(m.p())];
        if (m.q())
            f = f * wbp[static_cast<std::size_t>(m.q())];
        r += f.times_monomial(rest, c);
    }
    return r;
}

std::vector<std::pair<Rational, SparsePoly>> weighted_components(const SparsePoly &p,
                                                                 const WeightVector &lambda)
{
    std::map<Rational, SparsePoly> parts;
    for (const auto &[m, c] : p.terms()) {
        auto [it, ins] = parts.try_emplace(m.weighted_degree(lambda), SparsePoly(p.n()));
        it->second.add_term(m, c);
    }
    return {parts.begin(), parts.end()};
}

std::vector<std::pair<Rational, SparsePoly>> holo_weight_expansion(const SparsePoly &p,
                                                                   const WeightVector &lambda)
{
    std::map<Rational, SparsePoly> parts;
    for (const auto &[m, c] : p.terms()) {
        auto [it, ins] = parts.try_emplace(m.holomorphic_weight(lambda), SparsePoly(p.n()));
        it->second.add_term(m, c);
    }
    return {parts.begin(), parts.end()};
}

SparsePoly compose(const SparsePoly &p, std::span<const SparsePoly> z_images, int target_n,
                   const std::optional<SparsePoly> &w_image)
{
    if (static_cast<int>(z_images.size()) != p.n())
        throw Error(ErrorKind::DimensionMismatch, "compose needs one image per z variable");
    std::vector<SparsePoly> conj_images;
    conj_images.reserve(z_images.size());
    for (const auto &img : z_images)
        conj_images.push_back(conjugate(img));
    std::optional<SparsePoly> wb_image;
    if (w_image)
        wb_image = conjugate(*w_image);

    // Cache powers per variable.
    using Powers = std::vector<SparsePoly>;
    const SparsePoly one = SparsePoly::constant(target_n, Scalar(1));
    std::vector<Powers> zp(z_images.size(), Powers{one}), zbp(z_images.size(), Powers{one});
    Powers wp{one}, wbp{one};
    auto power = [](Powers &cache, const SparsePoly &base, int e) -> const SparsePoly & {
        while (static_cast<int>(cache.size()) <= e)
            cache.push_back(cache.back() * base);
        return cache[static_cast<std::size_t>(e)];
    };

    SparsePoly r(target_n);
    for (const auto &[m, c] : p.terms()) {
        if (m.l())
            throw Error(ErrorKind::InvalidModelPolynomial, "compose does not support u");
        if ((m.p() || m.q()) && !w_image)
            throw Error(ErrorKind::InvalidModelPolynomial, "compose needs a w image");
        SparsePoly t = SparsePoly::constant(target_n, c);
        for (int j = 0; j < p.n(); ++j) {
            auto ju = static_cast<std::size_t>(j);
            if (m.alpha(j))
                t = t * power(zp[ju], z_images[ju], m.alpha(j));
            if (m.beta(j))
                t = t * power(zbp[ju], conj_images[ju], m.beta(j));
        }
        if (m.p())
            t = t * power(wp, *w_image, m.p());
        if (m.q())
            t = t * power(wbp, *wb_image, m.q());
        r += t;
    }
    return r;
}

SparsePoly identify_conjugate(const SparsePoly &p, int j)
{
    SparsePoly r(p.n());
    for (const auto &[m, c] : p.terms()) {
        Monomial k(m);
        k.alpha(j) += k.beta(j);
        k.beta(j) = 0;
        r.add_term(k, c);
    }
    return r;
}

std::map<int, SparsePoly> collect_powers(const SparsePoly &p, Var v)
{
    std::map<int, SparsePoly> out;
    for (const auto &[m, c] : p.terms()) {
        Monomial k(m);
        int e = k.exponent(v);
        k.exponent(v) = 0;
        auto [it, ins] = out.try_emplace(e, SparsePoly(p.n()));
        it->second.add_term(k, c);
    }
    return out;
}

std::pair<SparsePoly, SparsePoly> split_pluriharmonic(const SparsePoly &p)
{
    SparsePoly harm(p.n()), mixed(p.n());
    for (const auto &[m, c] : p.terms())
        (m.is_pluriharmonic() ? harm : mixed).add_term(m, c);
    return {harm, mixed};
}

namespace {

bool divides(const Monomial &d, const Monomial &m)
{
    for (std::size_t i = 0; i < m.exponents().size(); ++i)
        if (d.exponents()[i] > m.exponents()[i])
            return false;
    return true;
}

Monomial quotient(const Monomial &m, const Monomial &d)
{
    Monomial q(m);
    for (std::size_t i = 0; i < m.exponents().size(); ++i)
        q.exponents()[i] -= d.exponents()[i];
    return q;
}

} // namespace

std::pair<SparsePoly, SparsePoly> divide(const SparsePoly &p, const SparsePoly &divisor)
{
    if (divisor.is_zero())
        throw std::domain_error("division by zero polynomial");
    const int n = std::max(p.n(), divisor.n());
    SparsePoly q(n), r(n), rest = p;
    const auto &[lm, lc] = divisor.leading_term();
    const Scalar lc_inv = lc.inverse();
    while (!rest.is_zero()) {
        const auto [m, c] = rest.leading_term();
        if (divides(lm, m)) {
            Monomial t = quotient(m, lm);
            Scalar f = c * lc_inv;
            q.add_term(t, f);
            rest -= divisor.times_monomial(t, f);
        } else {
            r.add_term(m, c);
            rest.add_term(m, -c);
        }
    }
    return {q, r};
}

SparsePoly reindex(const SparsePoly &p, int target_n, std::span<const int> index_map)
{
    SparsePoly r(target_n);
    for (const auto &[m, c] : p.terms()) {
        Monomial k(target_n);
        for (int j = 0; j < p.n(); ++j) {
            int t = index_map[static_cast<std::size_t>(j)];
            if ((m.alpha(j) || m.beta(j)) && t < 0)
                throw Error(ErrorKind::DimensionMismatch, "variable dropped by reindex");
            if (t >= 0) {
                k.alpha(t) += m.alpha(j);
                k.beta(t) += m.beta(j);
            }
        }
        k.p() = m.p();
        k.q() = m.q();
        k.l() = m.l();
        r.add_term(k, c);
    }
    return r;
}

} // namespace crsym
