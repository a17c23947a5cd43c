#pragma once

#include <cstddef>

#include "ilt/grid.hpp"
#include "ilt/optics.hpp"

namespace ilt {

struct EvaluationReport {
    RealGrid epe;
    double error = 0.0;
    std::size_t nonzero_epe_pixels = 0;
    BinaryPattern printed;
    RealGrid aerial;
};

/// |output - target| per pixel.
RealGrid epe_map(const BinaryPattern& output, const BinaryPattern& target);

/// l2 norm of the EPE map, i.e. sqrt(#differing pixels) for binary inputs.
double epe_error(const BinaryPattern& output, const BinaryPattern& target);

/// Forward chain convolve -> aerial image -> hard threshold, then EPE against target.
EvaluationReport evaluate(const RealGrid& mask, const BinaryPattern& target, const ImagingModel& model);
EvaluationReport evaluate(const RealGrid& mask, const BinaryPattern& target, const OpticsConfig& optics);

}  // namespace ilt
