#include "gaussres/sources.hpp"

#include <cmath>
#include <stdexcept>

namespace gaussres {

void SourceSpec::validate() const {
    if (!(n0 >= 0.0)) throw std::invalid_argument("SourceSpec: n0 must be >= 0");
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("SourceSpec: gamma must be in [0, 1]");
    }
}

GaussianState make_correlated_thermal(double n0, double gamma, double phi) {
    SourceSpec{SourceVariant::CorrelatedThermal, n0, gamma, phi, 0.0}.validate();
    Mat4 cov = (2.0 * n0 + 1.0) * Mat4::Identity();
    // Upper-right block from <a1^dag a2> = n0 gamma e^{i phi}, <a1 a2> = 0;
    // this is R(-phi) scaled, which keeps the covariance symmetric for all phi.
    Mat2 b;
    b << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
    b *= 2.0 * n0 * gamma;
    cov.block<2, 2>(0, 2) = b;
    cov.block<2, 2>(2, 0) = b.transpose();
    return GaussianState(Vec4::Zero(), cov);
}

GaussianState make_displaced_thermal(double n0, double gamma, double phi) {
    SourceSpec{SourceVariant::DisplacedThermal, n0, gamma, phi, 0.0}.validate();
    const Mat4 cov = (2.0 * n0 * (1.0 - gamma) + 1.0) * Mat4::Identity();
    Vec4 mean;
    // first source displaced along q
    mean << 1.0, 0.0, std::cos(phi), std::sin(phi);
    mean *= 2.0 * std::sqrt(gamma * n0);
    return GaussianState(mean, cov);
}

GaussianState make_squeezed_pair(double n0, double theta) {
    if (!(n0 >= 0.0)) throw std::invalid_argument("make_squeezed_pair: n0 must be >= 0");
    const double xi = std::asinh(std::sqrt(n0));
    const Mat2 s2 = squeeze(xi) * squeeze(xi);
    const Mat2 r = rotation(theta);
    Mat4 cov = Mat4::Zero();
    cov.block<2, 2>(0, 0) = s2;
    cov.block<2, 2>(2, 2) = r * s2 * r.transpose();
    return GaussianState(Vec4::Zero(), cov);
}

GaussianState make_source(const SourceSpec& spec) {
    spec.validate();
    switch (spec.variant) {
        case SourceVariant::CorrelatedThermal:
            return make_correlated_thermal(spec.n0, spec.gamma, spec.phi);
        case SourceVariant::DisplacedThermal:
            return make_displaced_thermal(spec.n0, spec.gamma, spec.phi);
        case SourceVariant::Coherent:
            return make_displaced_thermal(spec.n0, 1.0, spec.phi);
        case SourceVariant::SqueezedPair:
            return make_squeezed_pair(spec.n0, spec.theta);
    }
    throw std::logic_error("make_source: unknown variant");
}

std::complex<double> degree_of_mutual_coherence(const GaussianState& state) {
    using std::complex;
    const Mat4& v = state.cov;
    const Vec4& x = state.mean;
    // <s_j^dag s_j> = (V_qq + V_pp - 2)/4 + (q^2 + p^2)/4
    const double n1 = (v(0, 0) + v(1, 1) - 2.0) / 4.0 + (x[0] * x[0] + x[1] * x[1]) / 4.0;
    const double n2 = (v(2, 2) + v(3, 3) - 2.0) / 4.0 + (x[2] * x[2] + x[3] * x[3]) / 4.0;
    if (n1 <= 1e-15 || n2 <= 1e-15) {
        throw std::domain_error("degree_of_mutual_coherence: a mode is dark");
    }
    complex<double> cross((v(0, 2) + v(1, 3)) / 4.0, (v(0, 3) - v(1, 2)) / 4.0);
    cross += complex<double>(x[0], -x[1]) * complex<double>(x[2], x[3]) / 4.0;
    return cross / std::sqrt(n1 * n2);
}

const char* to_string(SourceVariant v) {
    switch (v) {
        case SourceVariant::CorrelatedThermal: return "correlated-thermal";
        case SourceVariant::DisplacedThermal: return "displaced-thermal";
        case SourceVariant::Coherent: return "coherent";
        case SourceVariant::SqueezedPair: return "squeezed";
    }
    return "?";
}

SourceVariant source_variant_from_string(const std::string& name) {
    if (name == "correlated-thermal") return SourceVariant::CorrelatedThermal;
    if (name == "displaced-thermal") return SourceVariant::DisplacedThermal;
    if (name == "coherent") return SourceVariant::Coherent;
    if (name == "squeezed") return SourceVariant::SqueezedPair;
    throw std::invalid_argument("unknown source variant: " + name);
}

}  // namespace gaussres
