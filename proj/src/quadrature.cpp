#include "fde/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

namespace fde {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    std::vector<double> x(n), w(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-based initial guess
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p0, p1, dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::fabs(dt) < 1e-15) break;
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    if (n % 2 == 1) x[n / 2] = 0.0;
    return {x, w};
}

namespace {

// Kronrod-15 nodes and weights, with the embedded Gauss-7 weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEval {
    double kronrod;
    double err;
};

PanelEval gk15(const std::function<double(double)>& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        double x = h * kXgk[j];
        double fsum = f(c - x) + f(c + x);
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }
    double err = std::fabs((resk - resg) * h);
    return {resk * h, err};
}

}  // namespace

QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_subdiv) {
    struct Seg {
        double a, b, val, err;
    };
    PanelEval e0 = gk15(f, a, b);
    std::vector<Seg> segs{{a, b, e0.kronrod, e0.err}};
    int ndiv = 0;
    for (;;) {
        double total = 0.0, toterr = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].val;
            toterr += segs[i].err;
            if (segs[i].err > segs[worst].err) worst = i;
        }
        double scale = std::max(std::fabs(total), 1e-300);
        if (toterr <= rel_tol * scale || segs[worst].err == 0.0)
            return {total, toterr, ndiv};
        if (ndiv >= max_subdiv) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "adaptive quadrature did not converge: achieved rel. error %.3e "
                          "after %d subdivisions",
                          toterr / scale, ndiv);
            throw NumericalError(buf);
        }
        Seg s = segs[worst];
        double mid = 0.5 * (s.a + s.b);
        PanelEval l = gk15(f, s.a, mid), r = gk15(f, mid, s.b);
        segs[worst] = {s.a, mid, l.kronrod, l.err};
        segs.push_back({mid, s.b, r.kronrod, r.err});
        ++ndiv;
    }
}

double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int order) {
    auto [x, w] = gauss_legendre(order);
    double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        double c = a + (p + 0.5) * h;
        double acc = 0.0;
        for (int j = 0; j < order; ++j) acc += w[j] * f(c + 0.5 * h * x[j]);
        total += 0.5 * h * acc;
    }
    return total;
}

}  // namespace fde
