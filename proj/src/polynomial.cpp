#include "lelosc/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lelosc {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        coeffs_ = {0.0};
        return;
    }
    for (double c : coeffs_) {
        if (!std::isfinite(c)) throw std::invalid_argument("polynomial coefficient not finite");
    }
    std::size_t first = 0;
    while (first + 1 < coeffs_.size() && coeffs_[first] == 0.0) ++first;
    if (first > 0) coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(first));
}

double Polynomial::coeff(std::size_t power) const {
    if (power >= coeffs_.size()) return 0.0;
    return coeffs_[coeffs_.size() - 1 - power];
}

double Polynomial::eval(double x) const {
    double acc = 0.0;
    for (double c : coeffs_) acc = acc * x + c;
    return acc;
}

std::complex<double> Polynomial::eval(std::complex<double> x) const {
    std::complex<double> acc = 0.0;
    for (double c : coeffs_) acc = acc * x + c;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() == 1) return Polynomial();
    std::vector<double> out(coeffs_.size() - 1);
    const auto n = coeffs_.size() - 1;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = coeffs_[i] * static_cast<double>(n - i);
    return Polynomial(std::move(out));
}

Polynomial Polynomial::scaled(double factor) const {
    std::vector<double> out = coeffs_;
    for (double& c : out) c *= factor;
    return Polynomial(std::move(out));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    const auto na = a.coeffs_.size();
    const auto nb = b.coeffs_.size();
    const auto n = std::max(na, nb);
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < na; ++i) out[n - na + i] += a.coeffs_[i];
    for (std::size_t i = 0; i < nb; ++i) out[n - nb + i] += b.coeffs_[i];
    return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + b.scaled(-1.0);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(out));
}

} // namespace lelosc
