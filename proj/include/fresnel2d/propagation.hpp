#pragma once
// Per-component complex fields via double Fresnel diffraction, the direct
// component, the channel sum, band averaging and the power/antenna mapping.

#include "fresnel2d/geometry.hpp"
#include "fresnel2d/reflector.hpp"

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace fresnel2d {

/// Carrier plus a fractional band sampled at equally spaced sub-frequencies.
struct FrequencySpec {
    double center_hz = 0.0;
    double band_fraction = 0.0; // fractional bandwidth (0 = pure tone)
    int band_points = 1;

    std::vector<double> band_freqs() const;
    double wavelength() const;
};

/// One multipath component at one calculation point. Index 0 is the direct
/// (non-reflected) component.
struct ComponentField {
    int component_index = 0;
    std::complex<double> value{0.0, 0.0};
    double aoa_deg = 0.0;      // arrival direction, CCW from +x
    double path_length = 0.0;  // r_m
    bool skipped = false;      // degenerate geometry, contributes 0
};

struct Transmitter {
    Point2 position;
    double input_power_w = 1.0;        // P_in
    double gain = 1.0;                 // G_tr, linear
    std::optional<Aperture> aperture;  // unblocked gap; walls outside it
};

/// Receive antenna: isotropic or a linear-amplitude gain table over arrival
/// angle (linear interpolation, wrap-around).
class Antenna {
  public:
    Antenna() = default;
    static Antenna isotropic() { return Antenna(); }
    static Antenna from_table(std::vector<double> angles_deg,
                              std::vector<double> gains);

    /// Linear amplitude gain toward `aoa_deg`.
    double gain(double aoa_deg) const;
    bool is_isotropic() const { return angles_.empty(); }
    const std::vector<double>& table_angles() const { return angles_; }
    const std::vector<double>& table_gains() const { return gains_; }

  private:
    std::vector<double> angles_; // sorted, degrees in [0, 360)
    std::vector<double> gains_;
};

/// A_tr = sqrt(G P_in / (2 pi c eps0)).
double transmit_amplitude(const Transmitter& tx, double direction_gain);

/// Direct component through the transmitter aperture. An absent aperture (or
/// a same-side configuration) is free space.
ComponentField direct_component(const Transmitter& tx, Point2 point, double f_hz);

/// Reflected component: transmitter-aperture diffraction to the reflector
/// center scaling an effective-source diffraction through the reflector
/// aperture. Degenerate geometry yields a zero-valued, skip-marked component.
ComponentField double_diffraction_component(const Transmitter& tx,
                                            const Reflector& reflector,
                                            Point2 point, double f_hz);

struct ChannelSample {
    std::complex<double> total{0.0, 0.0}; // sum of g_rx-weighted components
    std::vector<ComponentField> parts;
};

/// h_k at one point: direct plus all reflector components.
ChannelSample channel_coefficient(const Transmitter& tx,
                                  std::span<const Reflector> reflectors,
                                  const Antenna& antenna, Point2 point,
                                  double f_hz);

/// Mean of |h|^2 over the band sub-frequencies.
double band_average_power(const Transmitter& tx,
                          std::span<const Reflector> reflectors,
                          const Antenna& antenna, Point2 point,
                          const FrequencySpec& spec);

/// P_rx = c eps0 lambda^2 |sum g_rx E|^2 / (8 pi).
double received_power(std::span<const ComponentField> parts,
                      const Antenna& antenna, double lambda_m);

} // namespace fresnel2d
