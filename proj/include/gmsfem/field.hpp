#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

namespace gmsfem {

/// Static exponent-weight field kappa(x), piecewise constant per fine element.
/// Values are >= 1 (background) so the evaluated coefficient never drops below 1
/// for nonnegative states.
struct BasePermField {
    int nx = 0;
    Eigen::VectorXd values;     // one entry per fine element, row-major
    std::string generator;
    std::uint64_t seed = 0;
    double kappa_max = 1.0;

    int num_elements() const { return static_cast<int>(values.size()); }
};

/// The nonlinear coefficient model kappa(x; u) = exp(kappa(x) * u(x)), with a
/// hard cap on the exponent to keep the coefficient representable.
struct CoefficientModel {
    BasePermField field;
    double exponent_cap = 700.0;
};

/// Background-1 field with randomly placed rectangular inclusions whose values
/// are drawn uniformly from [kappa_max/2, kappa_max]. Deterministic per seed.
BasePermField gen_random_inclusions(int nx, std::uint64_t seed, double kappa_max,
                                    double fill_fraction);

/// Background-1 field with fixed horizontal and L-shaped channels of width >= 2
/// fine cells at value kappa_max; at least one channel spans several coarse
/// elements.
BasePermField gen_channelized(int nx, double kappa_max);

/// Element-wise affine blend mu_p * k1 + (1 - mu_p) * k2.
BasePermField blend(const BasePermField& k1, const BasePermField& k2, double mu_p);

/// Evaluate exp(min(kappa(x) * u, cap)) per fine element. u_elem holds one state
/// value per element. Throws DomainError on non-finite input.
Eigen::VectorXd eval_coefficient(const CoefficientModel& model, const Eigen::VectorXd& u_elem);

/// Same, with the element state constant over the domain.
Eigen::VectorXd eval_coefficient(const CoefficientModel& model, double u_const);

/// Plain-text matrix serialization: one row of nx space-separated values per
/// grid row, bottom row first.
void save_field_text(const BasePermField& field, const std::string& path);
BasePermField load_field_text(const std::string& path);

} // namespace gmsfem
