#include "cubictrace/special.hpp"

#include <cassert>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

namespace cubictrace::special {

namespace {

constexpr double pi = std::numbers::pi;

struct GLRule {
    std::vector<double> node;    // on [-1, 1]
    std::vector<double> weight;
};

// Newton iteration on the Legendre recurrence.
const GLRule& gl_rule(int n) {
    static std::map<int, GLRule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GLRule r;
    r.node.resize(n);
    r.weight.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.node[i] = x;
        r.weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(r)).first->second;
}

template <class T, class F>
T gl_panel(const F& f, double a, double b) {
    const GLRule& r = gl_rule(20);
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T s{};
    for (size_t i = 0; i < r.node.size(); ++i)
        s += r.weight[i] * f(c + h * r.node[i]);
    return h * s;
}

template <class T, class F>
T adapt(const F& f, double a, double b, double tol, T whole, int depth) {
    double m = 0.5 * (a + b);
    T left = gl_panel<T>(f, a, m);
    T right = gl_panel<T>(f, m, b);
    if (depth >= 24 || std::abs(left + right - whole) <= tol)
        return left + right;
    return adapt<T>(f, a, m, 0.5 * tol, left, depth + 1) +
           adapt<T>(f, m, b, 0.5 * tol, right, depth + 1);
}

template <class T, class F>
T integrate_impl(const F& f, double a, double b, double tol) {
    if (a == b) return T{};
    return adapt<T>(f, a, b, tol, gl_panel<T>(f, a, b), 0);
}

template <class T, class F>
T half_line_impl(const F& f, double a, double tol) {
    T total{};
    double lo = a, len = 1.0;
    int quiet = 0;
    for (int seg = 0; seg < 64; ++seg) {
        T part = integrate_impl<T>(f, lo, lo + len, 0.25 * tol);
        total += part;
        if (std::abs(part) < tol * (1.0 + std::abs(total)))
            ++quiet;
        else
            quiet = 0;
        if (quiet >= 2) break;
        lo += len;
        len *= 2.0;
    }
    return total;
}

template <class T, class F>
T tanh_sinh_impl(const F& f, double a, double b, double tol) {
    // x = c + h tanh((pi/2) sinh t); trapezoid in t, halving the step until
    // the value settles.  Abscissas within ~1e-15 of the endpoints are
    // dropped, which is what makes integrable endpoint singularities safe.
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double tmax = 4.0;
    // Node pair at +-t; the endpoint offsets are formed from e^{-2|u|}
    // directly so singular integrands see accurate small abscissas.
    auto eval_pair = [&](double t) -> T {
        double u = 0.5 * pi * std::sinh(t);
        double q = std::exp(-2.0 * std::abs(u));
        double offset = h * 2.0 * q / (1.0 + q);
        if (offset == 0.0) return T{};
        double w = 0.5 * pi * std::cosh(t) * 4.0 * q / ((1.0 + q) * (1.0 + q));
        return w * (f(a + offset) + f(b - offset));
    };
    double step = 1.0;
    T sum = 0.5 * pi * f(c);
    for (double t = step; t <= tmax; t += step) sum += eval_pair(t);
    T prev = h * step * sum;
    for (int level = 1; level <= 12; ++level) {
        step *= 0.5;
        for (double t = step; t <= tmax; t += 2.0 * step) sum += eval_pair(t);
        T cur = h * step * sum;
        if (level >= 3 && std::abs(cur - prev) <= tol * (1.0 + std::abs(cur)))
            return cur;
        prev = cur;
    }
    return prev;
}

// Lanczos coefficients, g = 607/128.
constexpr double lanczos_g = 607.0 / 128.0;
constexpr double lanczos_c[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

cplx lanczos_series(cplx z) {
    cplx s = lanczos_c[0];
    for (int k = 1; k < 15; ++k) s += lanczos_c[k] / (z + static_cast<double>(k));
    return s;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
    return integrate_impl<double>(f, a, b, tol);
}

cplx integrate_c(const std::function<cplx(double)>& f, double a, double b,
                 double tol) {
    return integrate_impl<cplx>(f, a, b, tol);
}

double integrate_half_line(const std::function<double(double)>& f, double a,
                           double tol) {
    return half_line_impl<double>(f, a, tol);
}

cplx integrate_half_line_c(const std::function<cplx(double)>& f, double a,
                           double tol) {
    return half_line_impl<cplx>(f, a, tol);
}

double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double tol) {
    return tanh_sinh_impl<double>(f, a, b, tol);
}

cplx tanh_sinh_c(const std::function<cplx(double)>& f, double a, double b,
                 double tol) {
    return tanh_sinh_impl<cplx>(f, a, b, tol);
}

cplx gamma_complex(cplx z) {
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
        return pi / (std::sin(pi * z) * gamma_complex(1.0 - z));
    }
    cplx zz = z - 1.0;
    cplx base = zz + lanczos_g + 0.5;
    return std::sqrt(2.0 * pi) * std::pow(base, zz + 0.5) * std::exp(-base) *
           lanczos_series(zz);
}

namespace {
// log sin(pi z) without overflow for large |Im z|
cplx log_sin_pi_stable(cplx z) {
    const cplx i(0.0, 1.0);
    if (std::abs(z.imag()) < 1.0) return std::log(std::sin(pi * z));
    if (z.imag() > 0.0)
        return -i * pi * z + std::log(1.0 - std::exp(2.0 * i * pi * z)) -
               std::log(2.0 * i) + i * pi;
    return i * pi * z + std::log(1.0 - std::exp(-2.0 * i * pi * z)) -
           std::log(2.0 * i);
}
}  // namespace

cplx log_gamma_complex(cplx z) {
    if (z.real() < 0.5)
        return std::log(pi) - log_sin_pi_stable(z) - log_gamma_complex(1.0 - z);
    cplx zz = z - 1.0;
    cplx base = zz + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (zz + 0.5) * std::log(base) - base +
           std::log(lanczos_series(zz));
}

double digamma(double x) {
    assert(x > 0.0);
    double r = 0.0;
    while (x < 16.0) {
        r -= 1.0 / x;
        x += 1.0;
    }
    double x2 = 1.0 / (x * x);
    // Asymptotic expansion with Bernoulli numbers.
    return r + std::log(x) - 0.5 / x -
           x2 * (1.0 / 12 -
                 x2 * (1.0 / 120 -
                       x2 * (1.0 / 252 - x2 * (1.0 / 240 - x2 / 132))));
}

double bessel_j(double nu, double x) { return std::cyl_bessel_j(nu, x); }

cplx bessel_j_imag_order(double t, double x) {
    cplx nu(0.0, 2.0 * t);
    cplx term = std::pow(cplx(0.5 * x), nu) / gamma_complex(1.0 + nu);
    cplx sum = term;
    double q = -0.25 * x * x;
    for (int m = 0; m < 400; ++m) {
        term *= q / ((m + 1.0) * (cplx(m + 1.0) + nu));
        sum += term;
        if (std::abs(term) < 1e-17 * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

cplx bessel_j_imag_order_integral(double t, double x) {
    cplx nu(0.0, 2.0 * t);
    cplx part1 = integrate_c(
        [&](double th) { return std::cos(cplx(x * std::sin(th)) - nu * th); }, 0.0,
        pi, 1e-13) / pi;
    cplx part2 = integrate_half_line_c(
        [&](double u) { return std::exp(cplx(-x * std::sinh(u)) - nu * u); }, 0.0,
        1e-13);
    return part1 - std::sin(nu * pi) / pi * part2;
}

cplx bessel_k(cplx nu, double y) {
    return integrate_half_line_c(
        [&](double u) { return std::exp(cplx(-y * std::cosh(u))) * std::cosh(nu * u); },
        0.0, 1e-13);
}

double bessel_k_imag_order(double t, double y) {
    return integrate_half_line(
        [&](double u) { return std::exp(-y * std::cosh(u)) * std::cos(t * u); }, 0.0,
        1e-13);
}

cplx hyp2f1(cplx a, cplx b, cplx c, cplx z) {
    if (std::abs(z) >= 1.0)
        throw std::invalid_argument("hyp2f1: series requires |z| < 1");
    cplx term = 1.0, sum = 1.0;
    for (int m = 0; m < 4000; ++m) {
        double md = static_cast<double>(m);
        term *= (a + md) * (b + md) / ((c + md) * (md + 1.0)) * z;
        sum += term;
        if (std::abs(term) < 1e-17 * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

// Im J_{2it}(x) / cosh(pi t) for t >= 0, evaluated in log scale: the leading
// factor (x/2)^{2it}/Gamma(1+2it) grows like e^{pi t} and overflows near
// t ~ 233, but dividing by cosh keeps the exponent bounded.
static double im_j_over_cosh(double t, double x) {
    cplx nu(0.0, 2.0 * t);
    cplx w = nu * std::log(0.5 * x) - log_gamma_complex(1.0 + nu);
    cplx term = 1.0, sum = 1.0;
    double q = -0.25 * x * x;
    for (int m = 0; m < 400; ++m) {
        term *= q / ((m + 1.0) * (cplx(m + 1.0) + nu));
        sum += term;
        if (std::abs(term) < 1e-17 * (1.0 + std::abs(sum))) break;
    }
    double log_cosh = pi * t + std::log1p(std::exp(-2.0 * pi * t)) -
                      std::log(2.0);
    return (std::exp(w - log_cosh) * sum).imag();
}

double kuznetsov_transform(const std::function<double(double)>& h, double x,
                           QuadScheme scheme, double tol) {
    auto g = [&](double t) { return t * h(t) * im_j_over_cosh(t, x); };
    if (scheme == QuadScheme::adaptive)
        return -2.0 * integrate_half_line(g, 0.0, tol);
    // Composite 40-point panels of width 2.  |Im J_{2it}(x)|/cosh(pi t) stays
    // O(1) for the x-range in play, so t|h(t)| is a usable envelope; stop once
    // it stays below the tolerance share over four consecutive panels.
    const GLRule& r = gl_rule(40);
    double total = 0.0;
    int quiet = 0;
    for (int panel = 0; panel < 4000; ++panel) {
        double a = 2.0 * panel, b = a + 2.0;
        double s = 0.0;
        for (size_t i = 0; i < r.node.size(); ++i)
            s += r.weight[i] * g(0.5 * (a + b) + 0.5 * (b - a) * r.node[i]);
        total += s;  // half-width 1
        double envelope = std::max(std::abs(b * h(a)), std::abs(b * h(b)));
        quiet = envelope < 0.02 * tol ? quiet + 1 : 0;
        if (quiet >= 4 && panel >= 4) break;
    }
    return -2.0 * total;
}

double diag_transform(const std::function<double(double)>& h, double tol) {
    return integrate_half_line(
               [&](double t) { return h(t) * std::tanh(pi * t) * t; }, 0.0, tol) /
           (pi * pi);
}

cplx kbessel_mellin_closed(cplx mu, cplx nu, cplx s) {
    return std::pow(2.0, s - 3.0) / gamma_complex(s) *
           gamma_complex(0.5 * (s + mu + nu)) * gamma_complex(0.5 * (s + mu - nu)) *
           gamma_complex(0.5 * (s - mu + nu)) * gamma_complex(0.5 * (s - mu - nu));
}

cplx kbessel_mellin_numeric(cplx mu, cplx nu, cplx s, double tol) {
    // u = log y; integrand K_mu(e^u) K_nu(e^u) e^{su} on the whole line.
    auto f = [&](double u) {
        double y = std::exp(u);
        return bessel_k(mu, y) * bessel_k(nu, y) * std::exp(s * u);
    };
    cplx right = half_line_impl<cplx>(f, 0.0, tol);
    cplx left = half_line_impl<cplx>([&](double u) { return f(-u); }, 0.0, tol);
    return right + left;
}

}  // namespace cubictrace::special
