#include "ilt/metrics.hpp"

#include <cmath>

namespace ilt {

RealGrid epe_map(const BinaryPattern& output, const BinaryPattern& target) {
    require_same_shape(output.grid(), target.grid(), "epe_map");
    RealGrid out(output.side());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::abs(output[i] - target[i]);
    return out;
}

double epe_error(const BinaryPattern& output, const BinaryPattern& target) {
    return l2_norm(epe_map(output, target));
}

EvaluationReport evaluate(const RealGrid& mask, const BinaryPattern& target, const ImagingModel& model) {
    require_same_shape(mask, target.grid(), "evaluate");
    RealGrid aerial = aerial_image(model.field(mask));
    BinaryPattern printed = image_threshold(aerial, model.optics().threshold);
    RealGrid epe = epe_map(printed, target);
    std::size_t nonzero = 0;
    for (double v : epe) nonzero += v != 0.0 ? 1 : 0;
    const double error = l2_norm(epe);
    return {std::move(epe), error, nonzero, std::move(printed), std::move(aerial)};
}

EvaluationReport evaluate(const RealGrid& mask, const BinaryPattern& target, const OpticsConfig& optics) {
    const ImagingModel model(build_psf(optics), mask.side());
    return evaluate(mask, target, model);
}

}  // namespace ilt
