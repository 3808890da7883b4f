#ifndef REHAZE_DCP_HPP
#define REHAZE_DCP_HPP

#include "rehaze/image.hpp"
#include "rehaze/scattering.hpp"

namespace rehaze::dcp {

struct Options {
    int patch = 15;
    double omega = 0.95;
    double top_fraction = 0.001;
};

/// Minimum over channels, then over a patch x patch window with replicated
/// borders. Patch must be odd and >= 1.
Plane dark_channel(const Image& image, int patch);

/// Mean colour of the input over the brightest top_fraction of dark-channel
/// pixels (at least one pixel). Ties broken by raster order.
Airlight estimate_airlight(const Image& image, int patch, double top_fraction);

/// t = 1 - omega * dark_channel(I / A), clamped to [kInversionTMin, 1].
TransmissionMap dcp_transmission(const Image& image, const Airlight& airlight, int patch, double omega);

/// estimate_airlight -> dcp_transmission -> invert_asm. No transmission
/// refinement is applied.
Image dcp_dehaze(const Image& image, const Options& options = {});

/// Same as dcp_dehaze, also returning the airlight it estimated.
Image dcp_dehaze(const Image& image, const Options& options, Airlight& estimated);

}  // namespace rehaze::dcp

#endif  // REHAZE_DCP_HPP
