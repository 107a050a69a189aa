#pragma once

#include <string>
#include <vector>

#include "pnlab/numerics.hpp"

namespace pnlab {

// f(s) = 1 + sum_n a_n e^{-lambda_n s}, frequencies strictly increasing > 0,
// a_N != 0. Entire of genus 1; convergence exponent d = 2.
class FiniteDirichletSeries {
  public:
    FiniteDirichletSeries(std::vector<double> lambdas, std::vector<cplx> coeffs);

    const std::vector<double>& lambdas() const { return lambdas_; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    std::size_t terms() const { return lambdas_.size(); }
    double lambda_max() const { return lambdas_.back(); }
    double coeff_norm1() const;  // 1 + sum |a_n|
    bool real_coefficients(double tol = 0.0) const;

    cplx eval(cplx s) const;
    // j-th derivative, j >= 0
    cplx derivative(int j, cplx s) const;

    static FiniteDirichletSeries from_json_file(const std::string& path);
    static FiniteDirichletSeries from_json_text(const std::string& text);
    std::string to_json_text() const;
    void write_json_file(const std::string& path) const;

  private:
    std::vector<double> lambdas_;
    std::vector<cplx> coeffs_;
};

struct StripBound {
    double sigma_minus = 0.0;
    double sigma_plus = 0.0;
};

// f'(s)/f(s); NearZeroDivision when |f(s)| <= cfg.eval_floor * scale.
cplx log_derivative(const FiniteDirichletSeries& f, cplx s,
                    const NumericsConfig& cfg = default_config());

// Zero-free bounds: above sigma_plus |f-1| < 1, below sigma_minus the last
// term dominates the rest.
StripBound zero_strip(const FiniteDirichletSeries& f);

}  // namespace pnlab
