#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "czint/errors.hpp"
#include "czint/rational.hpp"

namespace czint {

// Numerical oracle for the asymptotic operator A = -i d/dt - S(t) acting on
// loops in R^2, with S(t) a symmetric 2x2 matrix loop given by a finite
// Fourier series.  The operator is discretized by a Galerkin projection onto
// the real trigonometric basis up to mode N; because S is a trigonometric
// polynomial the projection integrals are evaluated exactly by a uniform
// trapezoid rule with enough nodes, and the assembled matrix is symmetric up
// to roundoff.

struct Sym2 {
    double a = 0, b = 0, c = 0; // [[a, b], [b, c]]

    Sym2 operator*(double s) const { return {a * s, b * s, c * s}; }
    Sym2& operator+=(const Sym2& o) {
        a += o.a;
        b += o.b;
        c += o.c;
        return *this;
    }
};

struct LoopOperator {
    Sym2 c0;
    std::vector<Sym2> cos_coeffs; // frequency f = index + 1
    std::vector<Sym2> sin_coeffs; // same length as cos_coeffs

    int fourier_order() const { return (int)cos_coeffs.size(); }

    Sym2 eval(double t) const {
        Sym2 s = c0;
        for (int f = 1; f <= fourier_order(); ++f) {
            double cf = std::cos(2.0 * M_PI * f * t), sf = std::sin(2.0 * M_PI * f * t);
            s += cos_coeffs[f - 1] * cf;
            s += sin_coeffs[f - 1] * sf;
        }
        return s;
    }

    // The k-fold cover carries the loop S_k(t) = k S(kt).
    LoopOperator cover(long long k) const {
        if (k < 1) fail(Errc::invalid_argument, "cover factor must be >= 1");
        LoopOperator out;
        out.c0 = c0 * double(k);
        out.cos_coeffs.assign((size_t)(k * fourier_order()), Sym2{});
        out.sin_coeffs.assign((size_t)(k * fourier_order()), Sym2{});
        for (int f = 1; f <= fourier_order(); ++f) {
            out.cos_coeffs[(size_t)(k * f) - 1] = cos_coeffs[f - 1] * double(k);
            out.sin_coeffs[(size_t)(k * f) - 1] = sin_coeffs[f - 1] * double(k);
        }
        return out;
    }

    // Trigonometric interpolation through G uniform samples S(j/G).
    static LoopOperator from_samples(const std::vector<Sym2>& samples) {
        if (samples.size() < 3) fail(Errc::invalid_argument, "need at least 3 samples");
        int g = (int)samples.size();
        int order = (g - 1) / 2;
        LoopOperator out;
        out.cos_coeffs.assign(order, Sym2{});
        out.sin_coeffs.assign(order, Sym2{});
        for (int j = 0; j < g; ++j) out.c0 += samples[j] * (1.0 / g);
        for (int f = 1; f <= order; ++f)
            for (int j = 0; j < g; ++j) {
                double ang = 2.0 * M_PI * f * j / g;
                out.cos_coeffs[f - 1] += samples[j] * (2.0 * std::cos(ang) / g);
                out.sin_coeffs[f - 1] += samples[j] * (2.0 * std::sin(ang) / g);
            }
        // drop trailing numerically-zero frequencies
        auto mag = [](const Sym2& s) {
            return std::max({std::abs(s.a), std::abs(s.b), std::abs(s.c)});
        };
        double scale = mag(out.c0);
        for (const auto& s : out.cos_coeffs) scale = std::max(scale, mag(s));
        for (const auto& s : out.sin_coeffs) scale = std::max(scale, mag(s));
        while (!out.cos_coeffs.empty() &&
               mag(out.cos_coeffs.back()) + mag(out.sin_coeffs.back()) < 1e-12 * (1.0 + scale)) {
            out.cos_coeffs.pop_back();
            out.sin_coeffs.pop_back();
        }
        return out;
    }
};

// Model operators for the three orbit families.  A frame twist by an integer
// degree d conjugates the loop by R(2 pi d t) and adds 2 pi d; it shifts
// every eigenvector winding by d without moving the spectrum, which is
// exactly a change of reference trivialization.
namespace spectral_models {

inline LoopOperator twist(const LoopOperator& op, long long d) {
    if (d == 0) return op;
    // R(w t) S(t) R(w t)^T decomposes entrywise into frequency shifts; rather
    // than track the algebra, resample: S'(j/G) = R * S(j/G) * R^T + 2 pi d.
    int order = op.fourier_order() + 2 * (int)std::llabs(d);
    int g = 4 * order + 9;
    std::vector<Sym2> samples((size_t)g);
    for (int j = 0; j < g; ++j) {
        double t = double(j) / g;
        Sym2 s = op.eval(t);
        double th = 2.0 * M_PI * d * t;
        double co = std::cos(th), si = std::sin(th);
        // R [[a,b],[b,c]] R^T with R = [[co,-si],[si,co]]
        double a = s.a, b = s.b, c = s.c;
        double ra = co * (a * co - b * si) - si * (b * co - c * si);
        double rb = co * (a * si + b * co) - si * (b * si + c * co);
        double rc = si * (a * si + b * co) + co * (b * si + c * co);
        samples[(size_t)j] = {ra + 2.0 * M_PI * d, rb, rc + 2.0 * M_PI * d};
    }
    return LoopOperator::from_samples(samples);
}

// Constant S = 2 pi theta I: elliptic with rotation surrogate theta.
inline LoopOperator elliptic(double theta) {
    LoopOperator op;
    op.c0 = {2.0 * M_PI * theta, 0.0, 2.0 * M_PI * theta};
    return op;
}

// Constant S = diag(a, -a) twisted by alpha0: even hyperbolic.
inline LoopOperator even_hyperbolic(double a, long long alpha0 = 0) {
    LoopOperator op;
    op.c0 = {a, 0.0, -a};
    return twist(op, alpha0);
}

// Half-twist rotating frame S(t) = R(pi t) diag(a,-a) R(pi t)^T, then an
// integer twist by alpha0.  The return map is -exp(J0 (diag(a,-a) - pi)),
// which has negative real eigenvalues only for a > pi; below that threshold
// the loop describes an elliptic orbit instead.
inline LoopOperator odd_hyperbolic(double a, long long alpha0 = 0) {
    if (a <= M_PI) fail(Errc::invalid_argument, "odd hyperbolic model needs a > pi");
    LoopOperator op;
    op.cos_coeffs = {{a, 0.0, -a}};
    op.sin_coeffs = {{0.0, a, 0.0}};
    return twist(op, alpha0);
}

} // namespace spectral_models

namespace spectral_detail {

// Real trigonometric basis, orthonormal in L^2(S^1, R^2):
//   index 0, 1:           constant e1, e2
//   index 2 + 4(n-1) + j: sqrt2 cos(2 pi n t) e1/e2, sqrt2 sin(2 pi n t) e1/e2
struct Basis {
    int modes;
    int size() const { return 2 * (2 * modes + 1); }

    // value and derivative of basis function b at time t, as (x, y)
    void eval(int b, double t, double out_val[2], double out_der[2]) const {
        out_val[0] = out_val[1] = out_der[0] = out_der[1] = 0.0;
        if (b < 2) {
            out_val[b] = 1.0;
            return;
        }
        int n = (b - 2) / 4 + 1;
        int j = (b - 2) % 4;
        double w = 2.0 * M_PI * n;
        double s2 = std::sqrt(2.0);
        double cv = s2 * std::cos(w * t), sv = s2 * std::sin(w * t);
        int comp = j % 2;
        if (j < 2) {
            out_val[comp] = cv;
            out_der[comp] = -w * sv;
        } else {
            out_val[comp] = sv;
            out_der[comp] = w * cv;
        }
    }
};

} // namespace spectral_detail

// Galerkin matrix of A = -i d/dt - S(t) on modes up to N.  Requires N >= 2F
// so the coefficient loop is fully resolved.
inline Eigen::MatrixXd discretize(const LoopOperator& op, int modes) {
    if (modes < 2 * op.fourier_order())
        fail(Errc::truncation_too_small,
             "need modes >= 2 * Fourier order = " + std::to_string(2 * op.fourier_order()));
    spectral_detail::Basis basis{modes};
    const int B = basis.size();
    const int M = 2 * (2 * modes + op.fourier_order()) + 5; // exact for the integrand degree

    Eigen::MatrixXd phi(2 * M, B), av(2 * M, B);
    for (int m = 0; m < M; ++m) {
        double t = double(m) / M;
        Sym2 s = op.eval(t);
        for (int b = 0; b < B; ++b) {
            double val[2], der[2];
            basis.eval(b, t, val, der);
            phi(2 * m, b) = val[0];
            phi(2 * m + 1, b) = val[1];
            // -J0 h' = (h2', -h1'); then subtract S h
            av(2 * m, b) = der[1] - (s.a * val[0] + s.b * val[1]);
            av(2 * m + 1, b) = -der[0] - (s.b * val[0] + s.c * val[1]);
        }
    }
    Eigen::MatrixXd A = (phi.transpose() * av) / double(M);
    double asym = (A - A.transpose()).cwiseAbs().maxCoeff();
    double scale = 1.0 + A.cwiseAbs().maxCoeff();
    if (asym > 1e-9 * scale)
        fail(Errc::law_violation, "assembled operator matrix is not symmetric: defect " +
                                      std::to_string(asym));
    return 0.5 * (A + A.transpose());
}

struct EigenPair {
    double eigenvalue = 0;
    long long winding = 0;
    double min_modulus = 0;
    Eigen::VectorXd coeffs;
};

struct SpectralParams {
    double degeneracy_tol = 1e-8;
    double pairing_tol = 1e-6;
    double winding_guard = 0.25;
    double min_modulus_tol = 1e-7;
};

// Winding number of a nowhere-vanishing loop of plane vectors given by
// uniform samples.
inline long long winding_of(const std::vector<std::complex<double>>& samples,
                            double min_modulus_tol = 1e-7, double guard = 0.25) {
    if (samples.size() < 8) fail(Errc::invalid_argument, "too few samples for a winding");
    double total = 0.0;
    double min_mod = std::abs(samples[0]);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& z0 = samples[i];
        const auto& z1 = samples[(i + 1) % samples.size()];
        min_mod = std::min(min_mod, std::abs(z0));
        total += std::arg(z1 / z0);
    }
    if (min_mod <= min_modulus_tol)
        fail(Errc::vector_too_small,
             "loop modulus " + std::to_string(min_mod) + " below winding tolerance");
    double turns = total / (2.0 * M_PI);
    double rounded = std::nearbyint(turns);
    if (std::abs(turns - rounded) > guard)
        fail(Errc::vector_too_small, "winding increment " + std::to_string(turns) +
                                         " too far from an integer");
    return (long long)rounded;
}

namespace spectral_detail {

inline std::vector<std::complex<double>> reconstruct(const Basis& basis,
                                                     const Eigen::VectorXd& coeffs,
                                                     int n_samples) {
    std::vector<std::complex<double>> out((size_t)n_samples);
    for (int m = 0; m < n_samples; ++m) {
        double t = double(m) / n_samples;
        double x = 0, y = 0;
        for (int b = 0; b < basis.size(); ++b) {
            double val[2], der[2];
            basis.eval(b, t, val, der);
            x += coeffs(b) * val[0];
            y += coeffs(b) * val[1];
        }
        out[(size_t)m] = {x, y};
    }
    return out;
}

} // namespace spectral_detail

// All eigenpairs with |lambda| <= window, sorted by eigenvalue.  The window
// must sit well inside the resolved part of the truncated spectrum.
inline std::vector<EigenPair> window_spectrum(const LoopOperator& op, int modes, double window,
                                              const SpectralParams& params = {}) {
    if (window > 2.0 * modes)
        fail(Errc::truncation_too_small, "window " + std::to_string(window) +
                                             " is not resolved at truncation " +
                                             std::to_string(modes));
    Eigen::MatrixXd A = discretize(op, modes);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A);
    if (solver.info() != Eigen::Success) fail(Errc::law_violation, "eigensolver failed");
    spectral_detail::Basis basis{modes};
    int n_samples = std::max(512, 8 * modes);
    std::vector<EigenPair> out;
    for (int i = 0; i < A.rows(); ++i) {
        double lam = solver.eigenvalues()(i);
        if (std::abs(lam) > window) continue;
        EigenPair p;
        p.eigenvalue = lam;
        p.coeffs = solver.eigenvectors().col(i);
        auto samples = spectral_detail::reconstruct(basis, p.coeffs, n_samples);
        double mn = 1e300;
        for (const auto& z : samples) mn = std::min(mn, std::abs(z));
        p.min_modulus = mn;
        p.winding = winding_of(samples, params.min_modulus_tol, params.winding_guard);
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end(),
              [](const EigenPair& a, const EigenPair& b) { return a.eigenvalue < b.eigenvalue; });
    return out;
}

// alpha = winding at the largest negative eigenvalue; parity 0 iff the
// smallest positive eigenvalue carries the same winding.
inline std::pair<long long, int> alpha_parity_numeric(const LoopOperator& op, int modes,
                                                      const SpectralParams& params = {}) {
    Eigen::MatrixXd A = discretize(op, modes);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A);
    if (solver.info() != Eigen::Success) fail(Errc::law_violation, "eigensolver failed");
    int neg = -1, pos = -1;
    for (int i = 0; i < A.rows(); ++i) {
        double lam = solver.eigenvalues()(i);
        if (std::abs(lam) < params.degeneracy_tol)
            fail(Errc::degenerate_orbit, "eigenvalue within degeneracy tolerance of zero");
        if (lam < 0) neg = i; // eigenvalues come sorted ascending
        else if (pos < 0) pos = i;
    }
    if (neg < 0 || pos < 0) fail(Errc::law_violation, "spectrum does not straddle zero");
    spectral_detail::Basis basis{modes};
    int n_samples = std::max(512, 8 * modes);
    auto wind_at = [&](int i) {
        auto samples = spectral_detail::reconstruct(basis, solver.eigenvectors().col(i), n_samples);
        return winding_of(samples, params.min_modulus_tol, params.winding_guard);
    };
    long long alpha = wind_at(neg);
    int parity = wind_at(pos) == alpha ? 0 : 1;
    return {alpha, parity};
}

struct LawReport {
    bool ok = true;
    int checked = 0;
    std::vector<std::string> violations;

    void violation(const std::string& v) {
        ok = false;
        violations.push_back(v);
    }
};

// Monotonicity of winding in the eigenvalue, and total multiplicity exactly 2
// per winding value.  Only winding bins whose neighbors are both visible in
// the window are counted, since a bin at the window edge may be clipped.
inline LawReport verify_spectrum_laws(const LoopOperator& op, int modes, double window,
                                      const SpectralParams& params = {}) {
    LawReport rep;
    auto pairs = window_spectrum(op, modes, window, params);
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            if (pairs[j].eigenvalue - pairs[i].eigenvalue <= params.pairing_tol) continue;
            ++rep.checked;
            if (pairs[i].winding > pairs[j].winding)
                rep.violation("winding not monotonic between eigenvalues " +
                              std::to_string(pairs[i].eigenvalue) + " and " +
                              std::to_string(pairs[j].eigenvalue));
        }
    std::map<long long, int> hist;
    for (const auto& p : pairs) hist[p.winding]++;
    for (const auto& [w, count] : hist) {
        if (!hist.count(w - 1) || !hist.count(w + 1)) continue; // clipped at window edge
        ++rep.checked;
        if (count != 2)
            rep.violation("winding " + std::to_string(w) + " carries multiplicity " +
                          std::to_string(count) + " != 2");
    }
    return rep;
}

// Spectrum/winding embedding under covers: every (lambda, w) of the base
// operator reappears as (k lambda, k w) for the k-fold cover, and sampled
// cover eigenvectors have covering number gcd(winding, k) as measured by
// their minimal period.
inline LawReport verify_cover_law(const LoopOperator& op, long long k, int modes, double window,
                                  double tol = 1e-6, const SpectralParams& params = {}) {
    if (k < 1) fail(Errc::invalid_argument, "cover factor must be >= 1");
    LawReport rep;
    auto base = window_spectrum(op, modes, window, params);
    auto cov = window_spectrum(op.cover(k), modes, double(k) * window + 1.0, params);
    for (const auto& p : base) {
        ++rep.checked;
        bool found = false;
        for (const auto& q : cov) {
            if (std::abs(q.eigenvalue - double(k) * p.eigenvalue) <=
                    tol * (1.0 + std::abs(double(k) * p.eigenvalue)) &&
                q.winding == k * p.winding) {
                found = true;
                break;
            }
        }
        if (!found)
            rep.violation("cover spectrum misses (" + std::to_string(k * p.eigenvalue) + ", " +
                          std::to_string(k * p.winding) + ")");
    }

    // Covering-number classification by minimal period.
    spectral_detail::Basis basis{modes};
    int n_samples = (int)(512 * k);
    for (const auto& q : cov) {
        // Skip eigenvalues that sit close to an eigenvalue of different
        // winding; the solver may then mix eigenspaces with different period.
        bool isolated = true;
        for (const auto& r : cov)
            if (r.winding != q.winding && std::abs(r.eigenvalue - q.eigenvalue) < 1e-4)
                isolated = false;
        if (!isolated) continue;
        auto samples = spectral_detail::reconstruct(basis, q.coeffs, n_samples);
        double norm = 0;
        for (const auto& z : samples) norm = std::max(norm, std::abs(z));
        long long cov_measured = 1;
        for (long long d = 2; d <= k; ++d) {
            if (k % d != 0) continue;
            long long shift = n_samples / d;
            double defect = 0;
            for (int m = 0; m < n_samples; ++m)
                defect = std::max(defect,
                                  std::abs(samples[(size_t)((m + shift) % n_samples)] -
                                           samples[(size_t)m]));
            if (defect < 1e-5 * norm) cov_measured = std::max(cov_measured, d);
        }
        long long g = std::gcd(std::llabs(q.winding), k);
        long long cov_predicted = g == 0 ? k : g;
        ++rep.checked;
        if (cov_measured != cov_predicted)
            rep.violation("cover eigenvector at " + std::to_string(q.eigenvalue) +
                          " has measured covering " + std::to_string(cov_measured) +
                          " but gcd(wind, k) = " + std::to_string(cov_predicted));
    }
    return rep;
}

} // namespace czint
