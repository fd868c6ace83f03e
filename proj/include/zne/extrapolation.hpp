#pragma once

#include <string_view>
#include <vector>

namespace zne {

struct ExtrapolationPoint {
    double lambda = 1.0;  // scale factor, >= 1
    double y = 0.0;       // measured expectation
    double std_err = 0.0; // carried for diagnostics only; fits are unweighted
};

struct ExtrapolationInput {
    std::vector<ExtrapolationPoint> points;
};

enum class FitMethod { Linear, Polynomial, Richardson };

std::string_view fit_method_name(FitMethod method);

struct FitDiagnostics {
    double rss = 0.0;            // residual sum of squares
    double lambda_mean = 0.0;    // (1/m) sum lambda_j
    double y_mean = 0.0;         // (1/m) sum y_j
    double s_lambda_y = 0.0;     // sum (lambda_j - mean)(y_j - mean)
    double s_lambda_lambda = 0.0; // sum (lambda_j - mean)^2
};

struct ExtrapolationFit {
    FitMethod method = FitMethod::Linear;
    int degree = 1;
    double intercept = 0.0;             // estimate at lambda = 0
    std::vector<double> coefficients;   // c0..cd (monomial basis)
    FitDiagnostics diagnostics;
    std::vector<ExtrapolationPoint> points; // the fitted data

    double evaluate(double lambda) const;
};

// Ordinary least squares line through the points, via the closed form
//   intercept = y_mean - (S_ly / S_ll) * lambda_mean.
// Requires m >= 2 and not-all-equal lambdas.
ExtrapolationFit linear_fit(const ExtrapolationInput& input);

// Least-squares polynomial of the given degree (m >= degree + 1). Solved by
// Householder QR on the Vandermonde matrix; rejects systems whose condition
// estimate exceeds 1e12. Degree 1 matches linear_fit.
ExtrapolationFit polynomial_fit(const ExtrapolationInput& input, int degree);

// Degree-(m-1) interpolating polynomial through all m points, evaluated at
// lambda = 0:  intercept = sum_j y_j * prod_{k != j} lambda_k / (lambda_k - lambda_j).
// Requires distinct lambdas.
ExtrapolationFit richardson(const ExtrapolationInput& input);

} // namespace zne
