#include "gaussres/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace gaussres {

ImagingChannel::ImagingChannel(double kappa_in, const ModeGeometry& geometry_in)
    : kappa(kappa_in), geometry(geometry_in) {
    if (!(kappa > 0.0) || !(kappa < 1.0)) {
        throw std::invalid_argument("ImagingChannel: kappa must be in (0, 1)");
    }
    if (kappa * (1.0 + geometry.delta) > 1.0) {
        throw std::invalid_argument("ImagingChannel: kappa (1 + delta) exceeds 1");
    }
}

std::pair<double, double> transmissions(const ImagingChannel& channel) {
    return {channel.kappa * (1.0 + channel.geometry.delta),
            channel.kappa * (1.0 - channel.geometry.delta)};
}

PropagationMatrices build_matrices(const ImagingChannel& channel) {
    const auto [kp, km] = transmissions(channel);
    const double dkp = channel.kappa * channel.geometry.d_delta;
    const double dkm = -dkp;

    PropagationMatrices m;
    m.t = Mat4::Zero();
    m.n = Mat4::Zero();
    m.dt = Mat4::Zero();
    m.dn = Mat4::Zero();

    const Mat2 i2 = Mat2::Identity();
    const double sp = std::sqrt(kp / 2.0);
    const double sm = std::sqrt(km / 2.0);
    m.t.block<2, 2>(0, 0) = sp * i2;
    m.t.block<2, 2>(0, 2) = sp * i2;
    m.t.block<2, 2>(2, 0) = sm * i2;
    m.t.block<2, 2>(2, 2) = -sm * i2;

    m.n.block<2, 2>(0, 0) = (1.0 - kp) * i2;
    m.n.block<2, 2>(2, 2) = (1.0 - km) * i2;

    const double dsp = dkp / (2.0 * std::sqrt(2.0 * kp));
    const double dsm = dkm / (2.0 * std::sqrt(2.0 * km));
    m.dt.block<2, 2>(0, 0) = dsp * i2;
    m.dt.block<2, 2>(0, 2) = dsp * i2;
    m.dt.block<2, 2>(2, 0) = dsm * i2;
    m.dt.block<2, 2>(2, 2) = -dsm * i2;

    m.dn.block<2, 2>(0, 0) = -dkp * i2;
    m.dn.block<2, 2>(2, 2) = -dkm * i2;
    return m;
}

GaussianState propagate(const GaussianState& source, const ImagingChannel& channel) {
    const PropagationMatrices m = build_matrices(channel);
    const Mat4 cov = m.t * source.cov * m.t.transpose() + m.n;
    const Vec4 mean = m.t * source.mean;
    return GaussianState(mean, cov);  // ctor asserts physicality
}

PropagatedDerivatives propagate_derivatives(const GaussianState& source,
                                            const ImagingChannel& channel) {
    const PropagationMatrices m = build_matrices(channel);
    PropagatedDerivatives d;
    d.d_cov = m.dt * source.cov * m.t.transpose() + m.t * source.cov * m.dt.transpose() + m.dn;
    d.d_mean = m.dt * source.mean;
    return d;
}

std::pair<double, double> mode_photon_numbers(const GaussianState& state) {
    const auto n_of = [&](int q, int p) {
        return (state.cov(q, q) + state.cov(p, p) - 2.0) / 4.0 +
               (state.mean[q] * state.mean[q] + state.mean[p] * state.mean[p]) / 4.0;
    };
    return {n_of(0, 1), n_of(2, 3)};
}

double total_photon_number(const GaussianState& state) {
    const auto [n1, n2] = mode_photon_numbers(state);
    return n1 + n2;
}

}  // namespace gaussres
