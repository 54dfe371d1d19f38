#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "conekit/cone_params.hpp"

namespace conekit {

/// One derivative slot of a jet: direction index and conjugation flag.
struct JetSlot {
    int idx;
    bool bar;
    auto operator<=>(const JetSlot&) const = default;
};

using JetKey = std::vector<JetSlot>;  // kept sorted

/// Mixed partials of the line-bundle weight a(z) at one point, total order <= 4.
class WeightJet {
public:
    Complex operator()(JetKey slots) const;
    Complex value() const { return (*this)(JetKey{}); }
    std::map<JetKey, Complex> parts;
};

/// Runs fn over every set partition of `items`.
void for_each_partition(const std::vector<JetSlot>& items,
                        const std::function<void(const std::vector<std::vector<JetSlot>>&)>& fn);

/// Smooth positive line-bundle weight a(z) = scale * exp(q(z)) with
///   q = sum_j kappa_j |z_j|^2 + 2 Re(lin_j z_j) + 2 Re(quad_j z_j^2)
///       + trig_amp_j cos(trig_freq_j * 2 Re z_j),
/// providing exact mixed partials to total order 4.
class HermitianWeight {
public:
    static HermitianWeight unit(int n = 1) { return constant(1.0, n); }
    static HermitianWeight constant(double c, int n = 1);
    static HermitianWeight exp_poly(int n, std::vector<double> kappa,
                                    std::vector<Complex> lin = {},
                                    std::vector<Complex> quad = {},
                                    std::vector<double> trig_amp = {},
                                    std::vector<double> trig_freq = {});
    /// Catalog lookup used by the configuration layer.
    static HermitianWeight from_name(const std::string& name, int n, double param = 0.0);

    HermitianWeight scaled(double factor) const;

    WeightJet jet(const Eigen::VectorXcd& z) const;
    double value(const Eigen::VectorXcd& z) const { return jet(z).value().real(); }

    /// Lemma-style normalization at the origin: a = 1, da = 0 and the
    /// unmixed second derivatives vanish there.
    bool adapted_at_origin() const;

    int dim() const { return n_; }
    double scale() const { return scale_; }

private:
    int n_ = 1;
    double scale_ = 1.0;
    std::vector<double> kappa_;
    std::vector<Complex> lin_;
    std::vector<Complex> quad_;
    std::vector<double> trig_amp_, trig_freq_;
};

}  // namespace conekit
