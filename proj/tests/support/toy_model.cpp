#include "toy_model.hpp"

#include <cmath>

namespace paire::testing {

namespace {

void fill_layer(DenseLayer& layer, int k) {
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
        for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
            layer.weight(r, c) =
                0.9 * std::sin(2.1 * k + 1.7 * static_cast<double>(r) + 0.9 * static_cast<double>(c) + 0.4);
        }
        layer.bias[r] = 0.1 * std::cos(2.1 * k + 0.5 * static_cast<double>(r));
    }
}

}  // namespace

ModelParams toy_model() {
    ModelParams m = ModelParams::zeros(4, 2, 2);
    fill_layer(m.self_encoder.first, 0);
    fill_layer(m.self_encoder.second, 1);
    fill_layer(m.agg_encoder.first, 2);
    fill_layer(m.agg_encoder.second, 3);
    fill_layer(m.embedding, 4);
    fill_layer(m.self_decoder.hidden, 5);
    fill_layer(m.self_decoder.output, 6);
    fill_layer(m.agg_decoder.hidden, 7);
    fill_layer(m.agg_decoder.output, 8);
    return m;
}

Batch toy_batch() {
    Matrix self(4, 1), agg(4, 1);
    self << 0.1, 0.2, 0.3, 0.4;
    agg << 0.25, 0.25, 0.4, 0.1;
    return make_batch(self, agg);
}

}  // namespace paire::testing
