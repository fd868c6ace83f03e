#include "zne/extrapolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zne {

std::string_view fit_method_name(FitMethod method) {
    switch (method) {
        case FitMethod::Linear: return "linear";
        case FitMethod::Polynomial: return "polynomial";
        case FitMethod::Richardson: return "richardson";
    }
    return "?";
}

namespace {

void basic_stats(const std::vector<ExtrapolationPoint>& pts, FitDiagnostics& d) {
    const double m = static_cast<double>(pts.size());
    d.lambda_mean = 0.0;
    d.y_mean = 0.0;
    for (const auto& p : pts) {
        d.lambda_mean += p.lambda;
        d.y_mean += p.y;
    }
    d.lambda_mean /= m;
    d.y_mean /= m;
    d.s_lambda_y = 0.0;
    d.s_lambda_lambda = 0.0;
    for (const auto& p : pts) {
        d.s_lambda_y += (p.lambda - d.lambda_mean) * (p.y - d.y_mean);
        d.s_lambda_lambda += (p.lambda - d.lambda_mean) * (p.lambda - d.lambda_mean);
    }
}

void finish(ExtrapolationFit& fit) {
    fit.diagnostics.rss = 0.0;
    for (const auto& p : fit.points) {
        const double r = p.y - fit.evaluate(p.lambda);
        fit.diagnostics.rss += r * r;
    }
}

void require_points(const ExtrapolationInput& input, size_t minimum) {
    if (input.points.size() < minimum) {
        throw std::invalid_argument("fit needs at least " + std::to_string(minimum) +
                                    " points, got " + std::to_string(input.points.size()));
    }
}

// Least-squares solve of the m x k Vandermonde system by Householder QR.
std::vector<double> solve_vandermonde(const std::vector<ExtrapolationPoint>& pts, int degree) {
    const size_t m = pts.size();
    const size_t k = static_cast<size_t>(degree) + 1;
    std::vector<double> a(m * k); // column-major
    std::vector<double> b(m);
    for (size_t r = 0; r < m; ++r) {
        double power = 1.0;
        for (size_t c = 0; c < k; ++c) {
            a[c * m + r] = power;
            power *= pts[r].lambda;
        }
        b[r] = pts[r].y;
    }

    std::vector<double> diag(k);
    for (size_t c = 0; c < k; ++c) {
        // Householder vector for column c
        double norm = 0.0;
        for (size_t r = c; r < m; ++r) norm += a[c * m + r] * a[c * m + r];
        norm = std::sqrt(norm);
        if (a[c * m + c] > 0) norm = -norm;
        diag[c] = norm;
        if (norm == 0.0) continue;
        for (size_t r = c; r < m; ++r) a[c * m + r] /= norm;
        a[c * m + c] -= 1.0;
        // apply to remaining columns and rhs: x -= v * (v'x) / v_c
        for (size_t cc = c + 1; cc <= k; ++cc) {
            double* col = cc < k ? &a[cc * m] : b.data();
            double dot = 0.0;
            for (size_t r = c; r < m; ++r) dot += a[c * m + r] * col[r];
            dot /= a[c * m + c];
            for (size_t r = c; r < m; ++r) col[r] += dot * a[c * m + r];
        }
    }

    double dmin = std::abs(diag[0]), dmax = std::abs(diag[0]);
    for (size_t c = 0; c < k; ++c) {
        dmin = std::min(dmin, std::abs(diag[c]));
        dmax = std::max(dmax, std::abs(diag[c]));
    }
    if (dmin == 0.0 || dmax / dmin > 1e12) {
        throw std::invalid_argument("ill-conditioned polynomial fit (condition estimate " +
                                    std::to_string(dmin == 0.0 ? INFINITY : dmax / dmin) + ")");
    }

    // back substitution on R (strict upper part lives above the Householder vectors)
    std::vector<double> x(k);
    for (size_t c = k; c-- > 0;) {
        double sum = b[c];
        for (size_t cc = c + 1; cc < k; ++cc) sum -= a[cc * m + c] * x[cc];
        x[c] = sum / diag[c];
    }
    return x;
}

} // namespace

double ExtrapolationFit::evaluate(double lambda) const {
    if (method == FitMethod::Richardson) {
        // Lagrange form over the support points
        double value = 0.0;
        for (size_t j = 0; j < points.size(); ++j) {
            double basis = 1.0;
            for (size_t k = 0; k < points.size(); ++k) {
                if (k == j) continue;
                basis *= (lambda - points[k].lambda) / (points[j].lambda - points[k].lambda);
            }
            value += points[j].y * basis;
        }
        return value;
    }
    double value = 0.0;
    for (size_t c = coefficients.size(); c-- > 0;) value = value * lambda + coefficients[c];
    return value;
}

ExtrapolationFit linear_fit(const ExtrapolationInput& input) {
    require_points(input, 2);
    ExtrapolationFit fit;
    fit.method = FitMethod::Linear;
    fit.degree = 1;
    fit.points = input.points;
    basic_stats(fit.points, fit.diagnostics);
    if (fit.diagnostics.s_lambda_lambda <= 0.0) {
        throw std::invalid_argument("all scale factors are equal; the line is undetermined");
    }
    const double slope = fit.diagnostics.s_lambda_y / fit.diagnostics.s_lambda_lambda;
    fit.intercept = fit.diagnostics.y_mean - slope * fit.diagnostics.lambda_mean;
    fit.coefficients = {fit.intercept, slope};
    finish(fit);
    return fit;
}

ExtrapolationFit polynomial_fit(const ExtrapolationInput& input, int degree) {
    if (degree < 1) throw std::invalid_argument("polynomial degree must be >= 1");
    if (input.points.size() <= static_cast<size_t>(degree)) {
        throw std::invalid_argument("underdetermined fit: degree " + std::to_string(degree) +
                                    " needs more than " + std::to_string(degree) + " points");
    }
    ExtrapolationFit fit;
    fit.method = FitMethod::Polynomial;
    fit.degree = degree;
    fit.points = input.points;
    basic_stats(fit.points, fit.diagnostics);
    fit.coefficients = solve_vandermonde(fit.points, degree);
    fit.intercept = fit.coefficients[0];
    finish(fit);
    return fit;
}

ExtrapolationFit richardson(const ExtrapolationInput& input) {
    require_points(input, 2);
    const auto& pts = input.points;
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = i + 1; j < pts.size(); ++j) {
            if (pts[i].lambda == pts[j].lambda) {
                throw std::invalid_argument("duplicate scale factor " + std::to_string(pts[i].lambda));
            }
        }
    }
    ExtrapolationFit fit;
    fit.method = FitMethod::Richardson;
    fit.degree = static_cast<int>(pts.size()) - 1;
    fit.points = pts;
    basic_stats(fit.points, fit.diagnostics);

    double intercept = 0.0;
    for (size_t j = 0; j < pts.size(); ++j) {
        double weight = 1.0;
        for (size_t k = 0; k < pts.size(); ++k) {
            if (k == j) continue;
            weight *= pts[k].lambda / (pts[k].lambda - pts[j].lambda);
        }
        intercept += pts[j].y * weight;
    }
    fit.intercept = intercept;

    // monomial coefficients of the interpolant via Newton divided differences
    const size_t m = pts.size();
    std::vector<double> dd(m);
    for (size_t i = 0; i < m; ++i) dd[i] = pts[i].y;
    std::vector<double> table = dd;
    std::vector<double> coeff(m, 0.0);
    for (size_t order = 1; order < m; ++order) {
        for (size_t i = 0; i + order < m; ++i) {
            table[i] = (table[i + 1] - table[i]) / (pts[i + order].lambda - pts[i].lambda);
        }
        dd[order] = table[0];
    }
    coeff[0] = dd[0];
    std::vector<double> running{1.0};
    for (size_t order = 1; order < m; ++order) {
        // running *= (x - lambda_{order-1})
        running.push_back(0.0);
        for (size_t c = running.size() - 1; c-- > 0;) {
            running[c + 1] += running[c];
            running[c] *= -pts[order - 1].lambda;
        }
        for (size_t c = 0; c < running.size(); ++c) coeff[c] += dd[order] * running[c];
    }
    fit.coefficients = coeff;
    finish(fit);
    return fit;
}

} // namespace zne
