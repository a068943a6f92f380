#include <numeric>

#include "models.hpp"
#include "wrapfs/error.hpp"

namespace wrapfs::detail {

namespace {

struct Layer {
    std::size_t in = 0;
    std::size_t out = 0;
    std::vector<double> weights;  // out x in, row-major
    std::vector<double> bias;
};

/// Forward pass; acts[0] is the input and acts.back() holds the output probability.
void forward(const std::vector<Layer>& layers, std::span<const double> x, std::vector<std::vector<double>>& acts) {
    acts[0].assign(x.begin(), x.end());
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const auto& layer = layers[l];
        auto& next = acts[l + 1];
        for (std::size_t o = 0; o < layer.out; ++o) {
            const std::span<const double> wrow(layer.weights.data() + o * layer.in, layer.in);
            next[o] = sigmoid(dot(wrow, acts[l]) + layer.bias[o]);
        }
    }
}

class MlpModel final : public Model {
public:
    explicit MlpModel(std::vector<Layer> layers) : layers_(std::move(layers)) {}

    Label predict_row(std::span<const double> x) const override {
        std::vector<std::vector<double>> acts(layers_.size() + 1);
        acts[0].resize(layers_.front().in);
        for (std::size_t l = 0; l < layers_.size(); ++l) acts[l + 1].resize(layers_[l].out);
        forward(layers_, x, acts);
        return acts.back()[0] >= 0.5 ? Label::positive : Label::negative;
    }

private:
    std::vector<Layer> layers_;
};

}  // namespace

// Fully connected sigmoid network with a single sigmoid output, trained by
// per-sample SGD on cross-entropy with a seeded shuffle each epoch.
ModelPtr fit_mlp(const ClassifierConfig& cfg, const Dataset& train) {
    require_both_classes(train, "mlp");
    const auto hidden_layers = count_param(cfg, "hidden_layers");
    const auto hidden_units = count_param(cfg, "hidden_units");
    const auto epochs = count_param(cfg, "epochs");
    const double lr = cfg.get("learning_rate");
    const double init_range = cfg.get("init_range");
    if (hidden_layers > 0 && hidden_units == 0) throw ConfigError("mlp: hidden_units must be positive");
    if (lr <= 0.0) throw ConfigError("mlp: learning_rate must be positive");
    if (init_range < 0.0) throw ConfigError("mlp: init_range must be non-negative");

    const auto& x = train.features();
    const std::size_t n = x.rows();
    Rng rng(cfg.seed());

    std::vector<std::size_t> widths{x.cols()};
    for (std::size_t l = 0; l < hidden_layers; ++l) widths.push_back(hidden_units);
    widths.push_back(1);
    std::vector<Layer> layers(widths.size() - 1);
    for (std::size_t l = 0; l < layers.size(); ++l) {
        auto& layer = layers[l];
        layer.in = widths[l];
        layer.out = widths[l + 1];
        layer.weights.resize(layer.in * layer.out);
        layer.bias.resize(layer.out);
        for (auto& w : layer.weights) w = rng.uniform(-init_range, init_range);
        for (auto& b : layer.bias) b = rng.uniform(-init_range, init_range);
    }

    std::vector<std::vector<double>> acts(widths.size()), deltas(widths.size());
    for (std::size_t l = 0; l < widths.size(); ++l) {
        acts[l].resize(widths[l]);
        deltas[l].resize(widths[l]);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        rng.shuffle(std::span(order));
        for (auto i : order) {
            forward(layers, x.row(i), acts);
            deltas.back()[0] = acts.back()[0] - to_int(train.labels()[i]);
            for (std::size_t l = layers.size(); l-- > 0;) {
                auto& layer = layers[l];
                const auto& delta_out = deltas[l + 1];
                if (l > 0) {
                    auto& delta_in = deltas[l];
                    std::fill(delta_in.begin(), delta_in.end(), 0.0);
                    for (std::size_t o = 0; o < layer.out; ++o) {
                        for (std::size_t k = 0; k < layer.in; ++k) delta_in[k] += layer.weights[o * layer.in + k] * delta_out[o];
                    }
                    for (std::size_t k = 0; k < layer.in; ++k) delta_in[k] *= acts[l][k] * (1.0 - acts[l][k]);
                }
                for (std::size_t o = 0; o < layer.out; ++o) {
                    const double g = lr * delta_out[o];
                    for (std::size_t k = 0; k < layer.in; ++k) layer.weights[o * layer.in + k] -= g * acts[l][k];
                    layer.bias[o] -= g;
                }
            }
        }
    }
    return std::make_shared<MlpModel>(std::move(layers));
}

}  // namespace wrapfs::detail
