#pragma once

// Hermite functions normalized in L^2(dm), dm = dx / sqrt(2 pi), together
// with grid quadrature, expansion synthesis and Fourier transforms.
//
// Normalization: phi_k = (2 pi)^{1/4} * h_k where h_k is the usual unit
// L^2(dx) Hermite function. Hence phi_0(x) = 2^{1/4} e^{-x^2/2} and the
// Bargmann image of phi_k is w^k / sqrt(2^k k!).

#include <fftw3.h>

#include <cstddef>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "hardy/core.hpp"

namespace hardy {

/// Uniform grid x_j = -L + j * (2L / N), j = 0..N-1.
struct GridSpec {
    double half_width = 16.0;
    int num_points = 4096;

    void validate() const {
        if (!(half_width > 0.0) || !std::isfinite(half_width))
            throw DomainError("GridSpec: half_width must be positive");
        if (num_points < 16 || num_points % 2 != 0)
            throw DomainError("GridSpec: num_points must be even and >= 16");
    }
    double spacing() const { return 2.0 * half_width / num_points; }
    double x(int j) const { return -half_width + j * spacing(); }
    std::vector<double> points() const {
        std::vector<double> xs(static_cast<std::size_t>(num_points));
        for (int j = 0; j < num_points; ++j) xs[static_cast<std::size_t>(j)] = x(j);
        return xs;
    }

    /// Largest Hermite index whose turning point sqrt(2k+1) stays inside 0.8 L.
    int band_limit() const {
        const double t = 0.8 * half_width;
        return static_cast<int>(std::floor((t * t - 1.0) / 2.0));
    }
};

struct SampledFunction {
    GridSpec grid;
    std::vector<cplx> values;

    void validate() const {
        grid.validate();
        if (values.size() != static_cast<std::size_t>(grid.num_points))
            throw DomainError("SampledFunction: value count does not match grid");
        for (const auto& v : values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw DomainError("SampledFunction: non-finite sample");
    }
};

/// Samples fn on every grid point.
template <class Fn>
SampledFunction sample(const GridSpec& grid, Fn&& fn) {
    grid.validate();
    SampledFunction out{grid, std::vector<cplx>(static_cast<std::size_t>(grid.num_points))};
    for (int j = 0; j < grid.num_points; ++j)
        out.values[static_cast<std::size_t>(j)] = cplx(fn(grid.x(j)));
    return out;
}

enum class Normalization { dm };

/// coeffs[k] = <f, phi_k> with respect to dm.
struct HermiteExpansion {
    std::vector<cplx> coeffs;
    Normalization convention = Normalization::dm;

    std::size_t size() const { return coeffs.size(); }
    static HermiteExpansion unit(std::size_t k, std::size_t length) {
        HermiteExpansion e;
        e.coeffs.assign(std::max(length, k + 1), cplx{});
        e.coeffs[k] = 1.0;
        return e;
    }
    double norm() const {
        double s = 0.0;
        for (const auto& c : coeffs) s += std::norm(c);
        return std::sqrt(s);
    }
};

namespace detail {

// Runs the normalized three-term recurrence at x and calls visit(k, phi_k(x))
// for k = 0..kmax. The polynomial part is rescaled whenever it grows large,
// with the scale kept in log form, so no intermediate overflows.
template <class Real, class Visit>
void hermite_recurrence(int kmax, Real x, Visit&& visit) {
    using std::exp;
    using std::log;
    using std::abs;
    using std::sqrt;
    const Real tiny = std::numeric_limits<Real>::min();
    const Real big = Real(1e150);
    const Real quarter_root_two = sqrt(sqrt(Real(2)));
    Real log_scale = -x * x / 2;
    auto emit = [&](int k, Real p) {
        Real v;
        if (p == Real(0)) {
            v = 0;
        } else if (log_scale > Real(-600)) {
            v = quarter_root_two * p * exp(log_scale);
        } else {
            v = std::copysign(quarter_root_two * exp(log(abs(p)) + log_scale), p);
        }
        if (abs(v) < tiny) v = 0;
        visit(k, v);
    };
    Real prev = 0;
    Real cur = 1;
    emit(0, cur);
    for (int k = 0; k < kmax; ++k) {
        const Real kk = Real(k);
        Real next = sqrt(Real(2) / (kk + 1)) * x * cur - sqrt(kk / (kk + 1)) * prev;
        prev = cur;
        cur = next;
        if (abs(cur) > big) {
            cur /= big;
            prev /= big;
            log_scale += log(big);
        }
        emit(k + 1, cur);
    }
}

inline void require_band_limit(const GridSpec& grid, int k) {
    if (k > grid.band_limit())
        throw BandLimitError("Hermite index " + std::to_string(k) +
                             " exceeds the grid band limit " +
                             std::to_string(grid.band_limit()));
}

}  // namespace detail

/// phi_k(x) for each x. Values below the smallest normal number are zero.
template <class Real = double>
std::vector<Real> eval_phi(int k, std::span<const Real> xs) {
    if (k < 0) throw DomainError("eval_phi: k must be non-negative");
    std::vector<Real> out;
    out.reserve(xs.size());
    for (Real x : xs) {
        Real last = 0;
        detail::hermite_recurrence<Real>(k, x, [&](int, Real v) { last = v; });
        out.push_back(last);
    }
    return out;
}

inline double eval_phi(int k, double x) {
    return eval_phi<double>(k, std::span<const double>(&x, 1)).front();
}

/// Trapezoidal approximation of <f, phi_k> = \int f phi_k dm.
inline cplx inner_product(const SampledFunction& f, int k) {
    f.validate();
    if (k < 0) throw DomainError("inner_product: k must be non-negative");
    detail::require_band_limit(f.grid, k);
    const double w = f.grid.spacing() / sqrt_two_pi;
    cplx acc{};
    for (int j = 0; j < f.grid.num_points; ++j) {
        const double phi = eval_phi(k, f.grid.x(j));
        acc += f.values[static_cast<std::size_t>(j)] * phi;
    }
    return acc * w;
}

/// All coefficients <f, phi_k>, k = 0..kmax, in one pass over the grid.
inline HermiteExpansion analyze(const SampledFunction& f, int kmax) {
    f.validate();
    if (kmax < 0) throw DomainError("analyze: kmax must be non-negative");
    detail::require_band_limit(f.grid, kmax);
    HermiteExpansion e;
    e.coeffs.assign(static_cast<std::size_t>(kmax) + 1, cplx{});
    const double w = f.grid.spacing() / sqrt_two_pi;
    for (int j = 0; j < f.grid.num_points; ++j) {
        const cplx fj = f.values[static_cast<std::size_t>(j)];
        if (fj == cplx{}) continue;
        detail::hermite_recurrence<double>(kmax, f.grid.x(j), [&](int k, double phi) {
            e.coeffs[static_cast<std::size_t>(k)] += fj * phi;
        });
    }
    for (auto& c : e.coeffs) c *= w;
    return e;
}

/// Pointwise sum_k coeffs[k] phi_k(x) on the grid.
inline SampledFunction synthesize(const HermiteExpansion& e, const GridSpec& grid) {
    grid.validate();
    SampledFunction out{grid, std::vector<cplx>(static_cast<std::size_t>(grid.num_points))};
    int kmax = static_cast<int>(e.coeffs.size()) - 1;
    while (kmax >= 0 && e.coeffs[static_cast<std::size_t>(kmax)] == cplx{}) --kmax;
    if (kmax < 0) return out;
    detail::require_band_limit(grid, kmax);
    for (int j = 0; j < grid.num_points; ++j) {
        cplx acc{};
        detail::hermite_recurrence<double>(kmax, grid.x(j), [&](int k, double phi) {
            acc += e.coeffs[static_cast<std::size_t>(k)] * phi;
        });
        out.values[static_cast<std::size_t>(j)] = acc;
    }
    return out;
}

/// Fourier transform on the coefficient side: phi_k -> (-i)^k phi_k.
inline HermiteExpansion fourier_expansion(const HermiteExpansion& e) {
    static constexpr cplx phase[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    HermiteExpansion out = e;
    for (std::size_t k = 0; k < out.coeffs.size(); ++k) out.coeffs[k] *= phase[k % 4];
    return out;
}

namespace detail {

inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// Owns one FFTW plan and its buffers.
class FftwPlan {
public:
    FftwPlan(int n, int sign) : n_(n) {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        buf_ = fftw_alloc_complex(static_cast<std::size_t>(n));
        plan_ = fftw_plan_dft_1d(n, buf_, buf_, sign, FFTW_ESTIMATE);
    }
    ~FftwPlan() {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(plan_);
        fftw_free(buf_);
    }
    FftwPlan(const FftwPlan&) = delete;
    FftwPlan& operator=(const FftwPlan&) = delete;

    std::span<cplx> data() { return {reinterpret_cast<cplx*>(buf_), static_cast<std::size_t>(n_)}; }
    void execute() { fftw_execute(plan_); }

private:
    int n_;
    fftw_complex* buf_ = nullptr;
    fftw_plan plan_ = nullptr;
};

// Largest |f| over the outer `width` samples on either side, relative to max |f|.
inline double edge_ratio(std::span<const cplx> values, std::size_t width = 2) {
    double peak = 0.0, edge = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
        const double m = std::abs(values[j]);
        peak = std::max(peak, m);
        if (j < width || j + width >= values.size()) edge = std::max(edge, m);
    }
    return peak == 0.0 ? 0.0 : edge / peak;
}

}  // namespace detail

inline constexpr double default_edge_tolerance = 1e-10;

/// \hat f(xi) = (2 pi)^{-1/2} \int f(x) e^{-i xi x} dx evaluated on the same grid.
///
/// The grid sum is a chirp-z transform: with xi x = (xi^2 + x^2 - (xi - x)^2)/2
/// it becomes a convolution, evaluated with zero-padded FFTs.
inline SampledFunction fourier_sampled(const SampledFunction& f,
                                       double edge_tolerance = default_edge_tolerance) {
    f.validate();
    if (detail::edge_ratio(f.values) > edge_tolerance)
        throw AliasingError("fourier_sampled: function does not decay at the grid edges");
    const int n = f.grid.num_points;
    const int m = 2 * n;
    const double h = f.grid.spacing();

    detail::FftwPlan fa(m, FFTW_FORWARD), fb(m, FFTW_FORWARD), inv(m, FFTW_BACKWARD);
    auto a = fa.data();
    auto b = fb.data();
    std::fill(a.begin(), a.end(), cplx{});
    std::fill(b.begin(), b.end(), cplx{});
    for (int j = 0; j < n; ++j) {
        const double x = f.grid.x(j);
        a[static_cast<std::size_t>(j)] = f.values[static_cast<std::size_t>(j)] * std::polar(1.0, -0.5 * x * x);
    }
    for (int d = 0; d < n; ++d) {
        const double s = d * h;
        const cplx kern = std::polar(1.0, 0.5 * s * s);
        b[static_cast<std::size_t>(d)] = kern;
        if (d > 0) b[static_cast<std::size_t>(m - d)] = kern;
    }
    fa.execute();
    fb.execute();
    auto c = inv.data();
    for (int i = 0; i < m; ++i) c[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
    inv.execute();

    SampledFunction out{f.grid, std::vector<cplx>(static_cast<std::size_t>(n))};
    const double scale = h / sqrt_two_pi / m;
    for (int i = 0; i < n; ++i) {
        const double xi = f.grid.x(i);
        out.values[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] * std::polar(scale, -0.5 * xi * xi);
    }
    return out;
}

/// L^2(dm) norm of a sampled function.
inline double l2_norm(const SampledFunction& f) {
    double s = 0.0;
    for (const auto& v : f.values) s += std::norm(v);
    return std::sqrt(s * f.grid.spacing() / sqrt_two_pi);
}

// Mehler: sum_k phi_k(x)^2 w^k = sqrt(2) (1 - w^2)^{-1/2} exp(-(1-w)/(1+w) x^2)

inline double mehler_lhs(double x, double w, int kmax) {
    if (!(std::abs(w) < 1.0)) throw DomainError("mehler_lhs: need |w| < 1");
    double sum = 0.0, wk = 1.0;
    detail::hermite_recurrence<double>(kmax, x, [&](int, double phi) {
        sum += phi * phi * wk;
        wk *= w;
    });
    return sum;
}

inline double mehler_rhs(double x, double w) {
    if (!(std::abs(w) < 1.0)) throw DomainError("mehler_rhs: need |w| < 1");
    return std::sqrt(2.0 / (1.0 - w * w)) * std::exp(-(1.0 - w) / (1.0 + w) * x * x);
}

}  // namespace hardy
