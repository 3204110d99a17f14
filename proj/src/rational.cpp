#include "bilap/rational.hpp"

#include <cmath>
#include <string>

namespace bilap {

namespace {

void trim_leading_zeros(Coeffs& c) {
    while (c.size() > 1 && c.back() == Complex(0.0, 0.0)) {
        c.pop_back();
    }
}

}  // namespace

int degree(const Coeffs& c) {
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        if (c[static_cast<size_t>(i)] != Complex(0.0, 0.0)) return i;
    }
    return -1;
}

Complex horner_eval(const Coeffs& c, Complex s) {
    if (c.empty()) return {0.0, 0.0};
    Complex acc = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) {
        acc = acc * s + c[i];
    }
    return acc;
}

Coeffs poly_derivative(const Coeffs& c) {
    if (c.size() <= 1) return {Complex(0.0, 0.0)};
    Coeffs d(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) {
        d[i - 1] = static_cast<double>(i) * c[i];
    }
    return d;
}

Coeffs poly_add(const Coeffs& a, const Coeffs& b) {
    Coeffs out(std::max(a.size(), b.size()), Complex(0.0, 0.0));
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

Coeffs poly_scale(const Coeffs& a, Complex factor) {
    Coeffs out = a;
    for (auto& c : out) c *= factor;
    return out;
}

Coeffs poly_mul(const Coeffs& a, const Coeffs& b) {
    if (a.empty() || b.empty()) return {};
    Coeffs out(a.size() + b.size() - 1, Complex(0.0, 0.0));
    for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

std::pair<Coeffs, Complex> poly_deflate(const Coeffs& c, Complex root) {
    if (c.size() <= 1) {
        return {Coeffs{Complex(0.0, 0.0)}, c.empty() ? Complex(0.0, 0.0) : c[0]};
    }
    Coeffs q(c.size() - 1);
    Complex carry = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = c[i] + carry * root;
    }
    return {std::move(q), carry};
}

RationalFunction make_rational(Coeffs num, Coeffs den) {
    for (const auto& c : num) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw InvalidArgumentError("rational numerator has non-finite coefficients");
    }
    for (const auto& c : den) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw InvalidArgumentError("rational denominator has non-finite coefficients");
    }
    trim_leading_zeros(num);
    trim_leading_zeros(den);
    const int dn = degree(num);
    const int dd = degree(den);
    if (dd < 1 || den.back() == Complex(0.0, 0.0)) {
        throw InvalidArgumentError(
            "rational denominator must have degree >= 1 with nonzero leading coefficient");
    }
    if (dn >= dd) {
        throw InvalidArgumentError(
            "rational function must be strictly proper (deg num " + std::to_string(dn) +
            " >= deg den " + std::to_string(dd) + ")");
    }
    return {std::move(num), std::move(den)};
}

Complex rational_eval_unguarded(const RationalFunction& r, Complex s) {
    return horner_eval(r.num, s) / horner_eval(r.den, s);
}

Complex rational_eval(const RationalFunction& r, Complex s) {
    const Complex d = horner_eval(r.den, s);
    const double guard =
        1e-10 * (1.0 + std::pow(std::abs(s), static_cast<double>(degree(r.den))));
    if (std::abs(d) <= guard) {
        throw PoleProximityError("rational evaluation too close to a pole");
    }
    return horner_eval(r.num, s) / d;
}

}  // namespace bilap
