#include "lelosc/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lelosc/errors.hpp"

namespace lelosc {

namespace {

using cd = std::complex<double>;

cd horner(const std::vector<double>& c, cd x) {
    cd acc = 0.0;
    for (double v : c) acc = acc * x + v;
    return acc;
}

bool residual_ok(const std::vector<double>& monic, cd z) {
    const auto deg = static_cast<double>(monic.size() - 1);
    const double scale = std::pow(std::max(1.0, std::abs(z)), deg);
    return std::abs(horner(monic, z)) < 1e-8 * scale;
}

std::vector<cd> aberth(const std::vector<double>& monic) {
    const std::size_t n = monic.size() - 1;
    std::vector<double> dcoef(n);
    for (std::size_t i = 0; i < n; ++i)
        dcoef[i] = monic[i] * static_cast<double>(n - i);

    double radius = 0.0;
    for (std::size_t i = 1; i <= n; ++i) radius = std::max(radius, std::abs(monic[i]));
    radius = 1.0 + radius;

    std::vector<cd> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double ang =
            2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
        z[k] = radius * cd(std::cos(ang), std::sin(ang));
    }

    constexpr int kMaxSweeps = 1000;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double max_step = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const cd pv = horner(monic, z[k]);
            cd dv = horner(dcoef, z[k]);
            if (dv == cd(0.0, 0.0)) {
                z[k] += cd(1e-8 * (1.0 + std::abs(z[k])), 1e-8);
                max_step = 1.0;
                continue;
            }
            const cd w = pv / dv;
            cd repel = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                const cd diff = z[k] - z[j];
                if (diff == cd(0.0, 0.0)) continue;
                repel += 1.0 / diff;
            }
            const cd denom = 1.0 - w * repel;
            const cd step = (std::abs(denom) < 1e-300) ? w : w / denom;
            z[k] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[k])));
        }
        bool done = max_step < 1e-15;
        if (!done) {
            done = true;
            for (std::size_t k = 0; k < n && done; ++k) done = residual_ok(monic, z[k]);
        }
        if (done) {
            for (std::size_t k = 0; k < n; ++k) {
                for (int it = 0; it < 3; ++it) {
                    const cd pv = horner(monic, z[k]);
                    const cd dv = horner(dcoef, z[k]);
                    if (dv == cd(0.0, 0.0)) break;
                    const cd next = z[k] - pv / dv;
                    if (std::abs(horner(monic, next)) < std::abs(pv)) z[k] = next;
                    else break;
                }
            }
            bool ok = true;
            for (std::size_t k = 0; k < n && ok; ++k) ok = residual_ok(monic, z[k]);
            if (ok) return z;
        }
    }
    throw ConvergenceFailure("root iteration exceeded 1000 sweeps");
}

/// Snaps near-real roots and rebuilds strict conjugate pairs.
std::vector<cd> symmetrize(std::vector<cd> z) {
    for (cd& r : z) {
        if (std::abs(r.imag()) < 1e-8 * std::max(1.0, std::abs(r))) r = cd(r.real(), 0.0);
    }
    std::vector<cd> out;
    std::vector<cd> pos, neg;
    for (const cd& r : z) {
        if (r.imag() > 0.0) pos.push_back(r);
        else if (r.imag() < 0.0) neg.push_back(r);
        else out.push_back(r);
    }
    for (const cd& p : pos) {
        if (neg.empty()) {
            out.emplace_back(p.real(), 0.0);
            continue;
        }
        auto best = neg.begin();
        double best_d = std::abs(std::conj(p) - *best);
        for (auto it = neg.begin() + 1; it != neg.end(); ++it) {
            const double d = std::abs(std::conj(p) - *it);
            if (d < best_d) {
                best_d = d;
                best = it;
            }
        }
        const cd avg = 0.5 * (p + std::conj(*best));
        neg.erase(best);
        out.push_back(avg);
        out.push_back(std::conj(avg));
    }
    for (const cd& q : neg) out.emplace_back(q.real(), 0.0);
    std::sort(out.begin(), out.end(), [](const cd& a, const cd& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

} // namespace

std::vector<std::complex<double>> poly_roots(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
    if (p.degree() == 0) return {};

    std::vector<double> c = p.coeffs();
    std::vector<cd> found;
    while (c.size() > 1 && c.back() == 0.0) {
        found.emplace_back(0.0, 0.0);
        c.pop_back();
    }

    const std::size_t n = c.size() - 1;
    if (n >= 1) {
        std::vector<double> monic(c);
        for (double& v : monic) v /= c[0];
        if (n == 1) {
            found.emplace_back(-monic[1], 0.0);
        } else if (n == 2) {
            const double b = monic[1];
            const double cc = monic[2];
            const double disc = b * b - 4.0 * cc;
            if (disc >= 0.0) {
                const double root = (b >= 0.0) ? (-b - std::sqrt(disc)) / 2.0
                                               : (-b + std::sqrt(disc)) / 2.0;
                found.emplace_back(root, 0.0);
                found.emplace_back(cc / root, 0.0);
            } else {
                const double re = -b / 2.0;
                const double im = std::sqrt(-disc) / 2.0;
                found.emplace_back(re, im);
                found.emplace_back(re, -im);
            }
        } else {
            auto z = symmetrize(aberth(monic));
            found.insert(found.end(), z.begin(), z.end());
        }
    }
    std::sort(found.begin(), found.end(), [](const cd& a, const cd& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return found;
}

std::vector<std::complex<double>> poles(const TransferFunction& g) {
    return poly_roots(g.den);
}

} // namespace lelosc
