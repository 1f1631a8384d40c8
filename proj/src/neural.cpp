#include "hvacrl/neural.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace hvacrl::neural {

namespace {

constexpr int kFormatVersion = 1;

double activate(Activation act, double z) {
    switch (act) {
        case Activation::Relu: return z > 0.0 ? z : 0.0;
        case Activation::Tanh: return std::tanh(z);
    }
    throw std::logic_error("unknown activation");
}

double activate_grad(Activation act, double z) {
    switch (act) {
        case Activation::Relu: return z > 0.0 ? 1.0 : 0.0;
        case Activation::Tanh: {
            const double t = std::tanh(z);
            return 1.0 - t * t;
        }
    }
    throw std::logic_error("unknown activation");
}

void check_finite(std::span<const double> v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x))
            throw std::runtime_error(std::string("neural: non-finite value in ") + what);
}

} // namespace

std::size_t MlpParams::parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.w.size() + l.b.size();
    return n;
}

MlpParams mlp_init(const std::vector<int>& sizes, Activation hidden, OutputKind output,
                   double output_scale, Rng& rng,
                   std::optional<double> final_layer_bound) {
    if (sizes.size() < 2)
        throw std::invalid_argument("mlp_init: need at least input and output sizes");
    for (int s : sizes)
        if (s < 1) throw std::invalid_argument("mlp_init: layer sizes must be positive");

    MlpParams p;
    p.hidden = hidden;
    p.output = output;
    p.output_scale = output_scale;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        Layer layer;
        layer.in = sizes[l];
        layer.out = sizes[l + 1];
        const bool last = l + 2 == sizes.size();
        const double bound = (last && final_layer_bound)
                                 ? *final_layer_bound
                                 : 1.0 / std::sqrt(static_cast<double>(layer.in));
        layer.w.resize(static_cast<std::size_t>(layer.out) * layer.in);
        for (double& w : layer.w) w = rng.uniform(-bound, bound);
        layer.b.assign(layer.out, 0.0);
        p.layers.push_back(std::move(layer));
    }
    return p;
}

std::vector<double> forward(const MlpParams& p, std::span<const double> x,
                            ForwardCache* cache) {
    if (p.layers.empty()) throw std::invalid_argument("forward: empty network");
    if (static_cast<int>(x.size()) != p.input_size())
        throw std::invalid_argument("forward: input size " + std::to_string(x.size()) +
                                    " does not match network input " +
                                    std::to_string(p.input_size()));
    check_finite(x, "input");

    if (cache) {
        cache->inputs.clear();
        cache->pre.clear();
    }

    std::vector<double> cur(x.begin(), x.end());
    for (std::size_t l = 0; l < p.layers.size(); ++l) {
        const Layer& layer = p.layers[l];
        if (static_cast<int>(cur.size()) != layer.in)
            throw std::invalid_argument("forward: layer dimension mismatch");
        std::vector<double> z(layer.out);
        for (int r = 0; r < layer.out; ++r) {
            double acc = layer.b[r];
            const double* wrow = layer.w.data() + static_cast<std::size_t>(r) * layer.in;
            for (int c = 0; c < layer.in; ++c) acc += wrow[c] * cur[c];
            z[r] = acc;
        }
        check_finite(z, "pre-activation");
        if (cache) {
            cache->inputs.push_back(std::move(cur));
            cache->pre.push_back(z);
        }
        const bool last = l + 1 == p.layers.size();
        cur.resize(z.size());
        if (!last) {
            for (std::size_t i = 0; i < z.size(); ++i) cur[i] = activate(p.hidden, z[i]);
        } else {
            switch (p.output) {
                case OutputKind::Identity:
                    cur = z;
                    break;
                case OutputKind::ScaledTanh:
                    for (std::size_t i = 0; i < z.size(); ++i)
                        cur[i] = p.output_scale * std::tanh(z[i]);
                    break;
            }
        }
    }
    return cur;
}

Gradients zero_gradients(const MlpParams& p) {
    Gradients g;
    for (const auto& l : p.layers) {
        Layer gl;
        gl.in = l.in;
        gl.out = l.out;
        gl.w.assign(l.w.size(), 0.0);
        gl.b.assign(l.b.size(), 0.0);
        g.layers.push_back(std::move(gl));
    }
    return g;
}

void scale_gradients(Gradients& g, double factor) {
    for (auto& l : g.layers) {
        for (double& w : l.w) w *= factor;
        for (double& b : l.b) b *= factor;
    }
}

void add_gradients(Gradients& acc, const Gradients& g) {
    if (acc.layers.size() != g.layers.size())
        throw std::invalid_argument("add_gradients: shape mismatch");
    for (std::size_t l = 0; l < acc.layers.size(); ++l) {
        if (acc.layers[l].w.size() != g.layers[l].w.size())
            throw std::invalid_argument("add_gradients: shape mismatch");
        for (std::size_t i = 0; i < acc.layers[l].w.size(); ++i)
            acc.layers[l].w[i] += g.layers[l].w[i];
        for (std::size_t i = 0; i < acc.layers[l].b.size(); ++i)
            acc.layers[l].b[i] += g.layers[l].b[i];
    }
}

Gradients backward(const MlpParams& p, const ForwardCache& cache,
                   std::span<const double> dout, std::vector<double>* dinput) {
    const std::size_t n_layers = p.layers.size();
    if (cache.inputs.size() != n_layers || cache.pre.size() != n_layers)
        throw std::invalid_argument("backward: cache does not match network");
    for (std::size_t l = 0; l < n_layers; ++l)
        if (static_cast<int>(cache.inputs[l].size()) != p.layers[l].in ||
            static_cast<int>(cache.pre[l].size()) != p.layers[l].out)
            throw std::invalid_argument("backward: cache does not match network");
    if (static_cast<int>(dout.size()) != p.output_size())
        throw std::invalid_argument("backward: output gradient size mismatch");
    check_finite(dout, "output gradient");

    Gradients g = zero_gradients(p);
    std::vector<double> delta(dout.begin(), dout.end());

    for (std::size_t li = n_layers; li-- > 0;) {
        const Layer& layer = p.layers[li];
        const auto& z = cache.pre[li];
        const auto& in = cache.inputs[li];
        const bool last = li + 1 == n_layers;

        // delta currently holds dL/d(layer output); convert to dL/dz
        if (last) {
            if (p.output == OutputKind::ScaledTanh)
                for (int r = 0; r < layer.out; ++r) {
                    const double t = std::tanh(z[r]);
                    delta[r] *= p.output_scale * (1.0 - t * t);
                }
        } else {
            for (int r = 0; r < layer.out; ++r) delta[r] *= activate_grad(p.hidden, z[r]);
        }

        Layer& gl = g.layers[li];
        for (int r = 0; r < layer.out; ++r) {
            const double d = delta[r];
            gl.b[r] = d;
            double* grow = gl.w.data() + static_cast<std::size_t>(r) * layer.in;
            for (int c = 0; c < layer.in; ++c) grow[c] = d * in[c];
        }

        std::vector<double> prev(layer.in, 0.0);
        for (int r = 0; r < layer.out; ++r) {
            const double d = delta[r];
            const double* wrow = layer.w.data() + static_cast<std::size_t>(r) * layer.in;
            for (int c = 0; c < layer.in; ++c) prev[c] += wrow[c] * d;
        }
        delta = std::move(prev);
    }

    for (const auto& l : g.layers) {
        check_finite(l.w, "gradient");
        check_finite(l.b, "gradient");
    }
    if (dinput) *dinput = std::move(delta);
    return g;
}

AdamState adam_init(const MlpParams& p, double lr) {
    AdamState st;
    st.lr = lr;
    Gradients z = zero_gradients(p);
    st.m = z.layers;
    st.v = z.layers;
    return st;
}

void adam_update(MlpParams& p, const Gradients& g, AdamState& st) {
    if (g.layers.size() != p.layers.size() || st.m.size() != p.layers.size())
        throw std::invalid_argument("adam_update: shape mismatch");
    st.step += 1;
    const double bc1 = 1.0 - std::pow(st.beta1, static_cast<double>(st.step));
    const double bc2 = 1.0 - std::pow(st.beta2, static_cast<double>(st.step));

    for (std::size_t l = 0; l < p.layers.size(); ++l) {
        Layer& pl = p.layers[l];
        const Layer& gl = g.layers[l];
        if (gl.w.size() != pl.w.size() || gl.b.size() != pl.b.size())
            throw std::invalid_argument("adam_update: shape mismatch");
        check_finite(gl.w, "gradient");
        check_finite(gl.b, "gradient");

        auto update = [&](std::vector<double>& params, const std::vector<double>& grads,
                          std::vector<double>& m, std::vector<double>& v) {
            for (std::size_t i = 0; i < params.size(); ++i) {
                m[i] = st.beta1 * m[i] + (1.0 - st.beta1) * grads[i];
                v[i] = st.beta2 * v[i] + (1.0 - st.beta2) * grads[i] * grads[i];
                const double mhat = m[i] / bc1;
                const double vhat = v[i] / bc2;
                params[i] -= st.lr * mhat / (std::sqrt(vhat) + st.eps);
            }
        };
        update(pl.w, gl.w, st.m[l].w, st.v[l].w);
        update(pl.b, gl.b, st.m[l].b, st.v[l].b);
    }
}

namespace {

std::string activation_name(Activation a) {
    return a == Activation::Relu ? "relu" : "tanh";
}

Activation activation_from(const std::string& s) {
    if (s == "relu") return Activation::Relu;
    if (s == "tanh") return Activation::Tanh;
    throw std::runtime_error("neural: unknown activation tag '" + s + "'");
}

std::string output_name(OutputKind o) {
    return o == OutputKind::Identity ? "identity" : "scaled_tanh";
}

OutputKind output_from(const std::string& s) {
    if (s == "identity") return OutputKind::Identity;
    if (s == "scaled_tanh") return OutputKind::ScaledTanh;
    throw std::runtime_error("neural: unknown output tag '" + s + "'");
}

} // namespace

std::string mlp_to_json(const MlpParams& p) {
    nlohmann::json j;
    j["version"] = kFormatVersion;
    j["hidden"] = activation_name(p.hidden);
    j["output"] = output_name(p.output);
    j["output_scale"] = p.output_scale;
    std::vector<int> sizes{p.input_size()};
    for (const auto& l : p.layers) sizes.push_back(l.out);
    j["sizes"] = sizes;
    auto& layers = j["layers"] = nlohmann::json::array();
    for (const auto& l : p.layers) layers.push_back({{"w", l.w}, {"b", l.b}});
    return j.dump();
}

MlpParams mlp_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("neural: bad parameter document: ") + e.what());
    }
    if (!j.contains("version") || j["version"].get<int>() != kFormatVersion)
        throw std::runtime_error("neural: unsupported parameter document version");

    MlpParams p;
    p.hidden = activation_from(j.at("hidden").get<std::string>());
    p.output = output_from(j.at("output").get<std::string>());
    p.output_scale = j.at("output_scale").get<double>();
    const auto sizes = j.at("sizes").get<std::vector<int>>();
    const auto& layers = j.at("layers");
    if (sizes.size() < 2 || layers.size() != sizes.size() - 1)
        throw std::runtime_error("neural: inconsistent layer sizes in document");
    for (std::size_t l = 0; l < layers.size(); ++l) {
        Layer layer;
        layer.in = sizes[l];
        layer.out = sizes[l + 1];
        layer.w = layers[l].at("w").get<std::vector<double>>();
        layer.b = layers[l].at("b").get<std::vector<double>>();
        if (layer.w.size() != static_cast<std::size_t>(layer.in) * layer.out ||
            layer.b.size() != static_cast<std::size_t>(layer.out))
            throw std::runtime_error("neural: layer shape mismatch in document");
        check_finite(layer.w, "loaded weights");
        check_finite(layer.b, "loaded biases");
        p.layers.push_back(std::move(layer));
    }
    return p;
}

void save_mlp(const MlpParams& p, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("neural: cannot open " + path.string());
    out << mlp_to_json(p) << '\n';
    if (!out) throw std::runtime_error("neural: write failed on " + path.string());
}

MlpParams load_mlp(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("neural: cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return mlp_from_json(text);
}

} // namespace hvacrl::neural
