#ifndef GAUSSRES_SOURCES_HPP
#define GAUSSRES_SOURCES_HPP

#include <complex>
#include <string>

#include "gaussres/symplectic.hpp"

namespace gaussres {

enum class SourceVariant { CorrelatedThermal, DisplacedThermal, Coherent, SqueezedPair };

/// Parameters of a two-emitter source family. n0 is the mean photon number
/// per source; gamma and phi are the magnitude and phase of the degree of
/// mutual coherence for the thermal families; theta is the squeezing-axis
/// angle of the squeezed pair.
struct SourceSpec {
    SourceVariant variant = SourceVariant::CorrelatedThermal;
    double n0 = 1.0;
    double gamma = 0.0;
    double phi = 0.0;
    double theta = 0.0;

    void validate() const;  // n0 >= 0, 0 <= gamma <= 1
};

/// Zero-mean thermal state with cross-correlations <a1^dag a2> = n0 gamma e^{i phi}.
GaussianState make_correlated_thermal(double n0, double gamma, double phi);

/// Identical thermal states displaced along phase-space directions separated
/// by phi; gamma is the displaced fraction of the photon budget. gamma = 1 is
/// a pair of coherent states.
GaussianState make_displaced_thermal(double n0, double gamma, double phi);

/// Two vacua squeezed along axes separated by theta, n0 = sinh^2(xi) photons
/// each. Pure.
GaussianState make_squeezed_pair(double n0, double theta);

/// Dispatch on spec.variant (Coherent = DisplacedThermal with gamma = 1).
GaussianState make_source(const SourceSpec& spec);

/// gamma e^{i phi} = <s1^dag s2> / sqrt(<s1^dag s1><s2^dag s2>), computed from
/// the quadrature moments. Throws if either mode is dark.
std::complex<double> degree_of_mutual_coherence(const GaussianState& state);

const char* to_string(SourceVariant v);
SourceVariant source_variant_from_string(const std::string& name);

}  // namespace gaussres

#endif
