#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hvacrl/rng.hpp"

namespace hvacrl::neural {

enum class Activation { Relu, Tanh };
enum class OutputKind { Identity, ScaledTanh };

/// One dense layer: row-major (out x in) weights plus bias.
struct Layer {
    int in = 0;
    int out = 0;
    std::vector<double> w;  // size out * in
    std::vector<double> b;  // size out

    double& at(int r, int c) { return w[static_cast<std::size_t>(r) * in + c]; }
    double at(int r, int c) const { return w[static_cast<std::size_t>(r) * in + c]; }
};

struct MlpParams {
    std::vector<Layer> layers;
    Activation hidden = Activation::Relu;
    OutputKind output = OutputKind::Identity;
    double output_scale = 1.0;  // used by ScaledTanh

    int input_size() const { return layers.front().in; }
    int output_size() const { return layers.back().out; }
    std::size_t parameter_count() const;
};

/// Weights uniform in +-1/sqrt(fan_in), biases zero. `final_layer_bound`
/// overrides the bound for the last layer (near-zero initial outputs).
MlpParams mlp_init(const std::vector<int>& sizes, Activation hidden, OutputKind output,
                   double output_scale, Rng& rng,
                   std::optional<double> final_layer_bound = {});

/// Per-layer inputs and pre-activations recorded by forward for backward.
struct ForwardCache {
    std::vector<std::vector<double>> inputs;  // input to each layer
    std::vector<std::vector<double>> pre;     // pre-activation of each layer
};

/// Affine + activation composition. Throws on dimension mismatch or any
/// non-finite value encountered along the way.
std::vector<double> forward(const MlpParams& p, std::span<const double> x,
                            ForwardCache* cache = nullptr);

/// Same Layer shapes as the network they differentiate.
struct Gradients {
    std::vector<Layer> layers;
};

Gradients zero_gradients(const MlpParams& p);
void scale_gradients(Gradients& g, double factor);
void add_gradients(Gradients& acc, const Gradients& g);

/// Exact reverse-mode gradients of forward. `dinput`, when non-null, receives
/// the gradient with respect to the network input (used to chain dQ/da).
Gradients backward(const MlpParams& p, const ForwardCache& cache,
                   std::span<const double> dout, std::vector<double>* dinput = nullptr);

struct AdamState {
    std::vector<Layer> m;  // first moments
    std::vector<Layer> v;  // second moments
    long step = 0;
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

AdamState adam_init(const MlpParams& p, double lr);

/// One bias-corrected Adam step in place.
void adam_update(MlpParams& p, const Gradients& g, AdamState& st);

// Versioned JSON persistence. Loading rejects unknown versions and
// inconsistent shapes.
std::string mlp_to_json(const MlpParams& p);
MlpParams mlp_from_json(const std::string& text);
void save_mlp(const MlpParams& p, const std::filesystem::path& path);
MlpParams load_mlp(const std::filesystem::path& path);

} // namespace hvacrl::neural
