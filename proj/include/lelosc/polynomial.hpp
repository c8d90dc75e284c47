#pragma once

#include <complex>
#include <vector>

namespace lelosc {

/// Real-coefficient polynomial, coefficients ordered highest degree first.
/// Leading zeros are trimmed on construction; the zero polynomial is the
/// single coefficient 0.
class Polynomial {
public:
    /// Zero polynomial.
    Polynomial() : coeffs_{0.0} {}

    /// From coefficients, highest degree first. Trims leading zeros.
    explicit Polynomial(std::vector<double> coeffs);

    /// Convenience: from an initializer list, highest degree first.
    Polynomial(std::initializer_list<double> coeffs)
        : Polynomial(std::vector<double>(coeffs)) {}

    /// Constant polynomial.
    [[nodiscard]] static Polynomial constant(double value) { return Polynomial({value}); }

    [[nodiscard]] const std::vector<double>& coeffs() const { return coeffs_; }
    [[nodiscard]] std::size_t degree() const { return coeffs_.size() - 1; }
    [[nodiscard]] bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
    [[nodiscard]] double leading() const { return coeffs_.front(); }

    /// Coefficient of s^power (0 if above the degree).
    [[nodiscard]] double coeff(std::size_t power) const;

    /// Horner evaluation.
    [[nodiscard]] double eval(double x) const;
    [[nodiscard]] std::complex<double> eval(std::complex<double> x) const;

    [[nodiscard]] Polynomial derivative() const;
    [[nodiscard]] Polynomial scaled(double factor) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    std::vector<double> coeffs_;
};

} // namespace lelosc
