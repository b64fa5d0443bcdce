#pragma once

#include "jlg/special.hpp"

#include <cmath>
#include <cstddef>
#include <queue>
#include <utility>
#include <vector>

// Adaptive Gauss-Legendre quadrature. Each panel is evaluated with an 8-point
// and a 16-point rule; their difference serves as the error estimate. The 1-D
// integrator bisects recursively, the 2-D integrator keeps a worst-panel heap
// and splits into quadrants until the summed error estimate meets tolerance.

namespace jlg {

namespace gl {

// Abscissas/weights for the positive half interval of [-1, 1].
inline constexpr double x8[4] = {
    0.18343464249564980494, 0.52553240991632898582,
    0.79666647741362673959, 0.96028985649753623168,
};
inline constexpr double w8[4] = {
    0.36268378337836198297, 0.31370664587788728734,
    0.22238103445337447054, 0.10122853629037625915,
};
inline constexpr double x16[8] = {
    0.09501250983763744019, 0.28160355077925891323,
    0.45801677765722738634, 0.61787624440264374845,
    0.75540440835500303390, 0.86563120238783174388,
    0.94457502307323257608, 0.98940093499164993260,
};
inline constexpr double w16[8] = {
    0.18945061045506849629, 0.18260341504492358887,
    0.16915651939500253819, 0.14959598881657673208,
    0.12462897125553387205, 0.09515851168249278481,
    0.06225352393864789286, 0.02715245941175409485,
};

} // namespace gl

template <class F>
double gauss8(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        s += gl::w8[i] * (f(c + h * gl::x8[i]) + f(c - h * gl::x8[i]));
    return s * h;
}

template <class F>
double gauss16(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 8; ++i)
        s += gl::w16[i] * (f(c + h * gl::x16[i]) + f(c - h * gl::x16[i]));
    return s * h;
}

namespace detail {

template <class F>
double adaptive_1d(F& f, double a, double b, double tol, int depth) {
    const double coarse = gauss8(f, a, b);
    const double fine = gauss16(f, a, b);
    if (std::fabs(fine - coarse) <= tol || std::fabs(fine - coarse) <= 1e-18)
        return fine;
    if (depth >= 48)
        throw numerical_error("adaptive_integrate: interval subdivision did not converge");
    const double m = 0.5 * (a + b);
    return adaptive_1d(f, a, m, 0.5 * tol, depth + 1) +
           adaptive_1d(f, m, b, 0.5 * tol, depth + 1);
}

} // namespace detail

template <class F>
double adaptive_integrate(F f, double a, double b, double abs_tol) {
    if (a == b) return 0.0;
    return detail::adaptive_1d(f, a, b, abs_tol, 0);
}

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
};

template <class F>
QuadratureResult adaptive_integrate_2d(F f, double ax, double bx, double ay,
                                       double by, double abs_tol,
                                       int max_panels = 40000) {
    struct Panel {
        double ax, bx, ay, by, value, error;
        bool alive;
    };

    auto tensor = [&f](double pax, double pbx, double pay, double pby, int n,
                       const double* xs, const double* ws) {
        const double cx = 0.5 * (pax + pbx), hx = 0.5 * (pbx - pax);
        const double cy = 0.5 * (pay + pby), hy = 0.5 * (pby - pay);
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const double xp = cx + hx * xs[i], xm = cx - hx * xs[i];
            double row = 0.0;
            for (int j = 0; j < n; ++j) {
                const double yp = cy + hy * xs[j], ym = cy - hy * xs[j];
                row += ws[j] * (f(xp, yp) + f(xp, ym) + f(xm, yp) + f(xm, ym));
            }
            s += ws[i] * row;
        }
        return s * hx * hy;
    };

    auto make_panel = [&](double pax, double pbx, double pay, double pby) {
        const double coarse = tensor(pax, pbx, pay, pby, 4, gl::x8, gl::w8);
        const double fine = tensor(pax, pbx, pay, pby, 8, gl::x16, gl::w16);
        return Panel{pax, pbx, pay, pby, fine, std::fabs(fine - coarse), true};
    };

    std::vector<Panel> panels;
    panels.reserve(256);
    // heap orders by error estimate; index breaks ties deterministically
    std::priority_queue<std::pair<double, std::size_t>> worst;

    panels.push_back(make_panel(ax, bx, ay, by));
    worst.emplace(panels[0].error, 0);
    double err_sum = panels[0].error;

    while (err_sum > abs_tol && !worst.empty()) {
        if (static_cast<int>(panels.size()) >= max_panels)
            throw numerical_error("adaptive_integrate_2d: panel budget exhausted");
        const auto top = worst.top();
        worst.pop();
        Panel& p = panels[top.second];
        if (!p.alive) continue;
        p.alive = false;
        err_sum -= p.error;
        const double mx = 0.5 * (p.ax + p.bx), my = 0.5 * (p.ay + p.by);
        const double quads[4][4] = {{p.ax, mx, p.ay, my},
                                    {mx, p.bx, p.ay, my},
                                    {p.ax, mx, my, p.by},
                                    {mx, p.bx, my, p.by}};
        for (const auto& q : quads) {
            panels.push_back(make_panel(q[0], q[1], q[2], q[3]));
            err_sum += panels.back().error;
            worst.emplace(panels.back().error, panels.size() - 1);
        }
    }

    // accumulate in creation order: independent of heap pop sequence
    QuadratureResult r;
    for (const Panel& p : panels) {
        if (!p.alive) continue;
        r.value += p.value;
        r.error_estimate += p.error;
        ++r.panels;
    }
    return r;
}

} // namespace jlg
