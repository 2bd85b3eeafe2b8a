#include "l3f/app/run_config.hpp"

#include "l3f/error.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace l3f::app {
namespace {

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "off" || v == "no") return false;
    throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    const int n = net::parse_int(key, v);
    if (n < 0) throw ConfigError(key + " must be non-negative");
    return static_cast<std::uint64_t>(n);
}

} // namespace

std::uint64_t parse_seed(const std::string& key, const std::string& v) {
    if (v.empty() || v.front() < '0' || v.front() > '9')
        throw ConfigError(key + ": expected an unsigned integer, got '" + v + "'");
    try {
        std::size_t used = 0;
        const unsigned long long s = std::stoull(v, &used);
        if (used != v.size()) throw ConfigError("");
        return s;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected an unsigned integer, got '" + v + "'");
    }
}

void RunConfig::set(const std::string& key, const std::string& v) {
    if (model.set(key, v)) return;
    if (key == "alpha1") loss.alpha1 = net::parse_double(key, v);
    else if (key == "alpha1_after_switch") loss.alpha1_after_switch = net::parse_double(key, v);
    else if (key == "alpha2") loss.alpha2 = net::parse_double(key, v);
    else if (key == "lambda") loss.lambda = net::parse_double(key, v);
    else if (key == "switch_iter") loss.switch_iter = parse_u64(key, v);
    else if (key == "cx_patch") cx.patch = net::parse_int(key, v);
    else if (key == "cx_stride") cx.grid_stride = net::parse_int(key, v);
    else if (key == "cx_out_stride") cx.out_stride = net::parse_int(key, v);
    else if (key == "cx_bandwidth") cx.bandwidth = net::parse_double(key, v);
    else if (key == "cx_epsilon") cx.epsilon = net::parse_double(key, v);
    else if (key == "lr") adam.learning_rate = net::parse_double(key, v);
    else if (key == "lr_final") lr_final = net::parse_double(key, v);
    else if (key == "beta1") adam.beta1 = net::parse_double(key, v);
    else if (key == "beta2") adam.beta2 = net::parse_double(key, v);
    else if (key == "adam_eps") adam.epsilon = net::parse_double(key, v);
    else if (key == "patch") patch = net::parse_int(key, v);
    else if (key == "views") views = net::parse_int(key, v);
    else if (key == "iterations") iterations = parse_u64(key, v);
    else if (key == "seed") seed = parse_seed(key, v);
    else if (key == "manifest") manifest = v;
    else if (key == "split") split = v;
    else if (key == "checkpoint") checkpoint = v;
    else if (key == "init_checkpoint") init_checkpoint = v;
    else if (key == "loss_log") loss_log = v;
    else if (key == "checkpoint_every") checkpoint_every = parse_u64(key, v);
    else if (key == "use_hist") use_hist = parse_bool(key, v);
    else if (key == "augment") augment = parse_bool(key, v);
    else throw ConfigError("unknown run config key '" + key + "'");
}

void RunConfig::load_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config " + path.string());
    std::stringstream ss;
    ss << is.rdbuf();
    for (const auto& [k, v] : net::parse_key_values(ss.str())) set(k, v);
}

void RunConfig::finalize() {
    if (!seed) {
        if (const char* env = std::getenv("L3F_SEED")) seed = parse_seed("L3F_SEED", env);
        else throw ConfigError("a seed is required (seed=... or L3F_SEED)");
    }
    model.validate();
    loss.validate();
    cx.validate();
    if (patch < 2 || patch % 2 != 0) throw ConfigError("patch must be even and >= 2");
    if (views < 1) throw ConfigError("views must be >= 1");
    if (!(adam.learning_rate > 0)) throw ConfigError("lr must be positive");
    if (lr_final && !(*lr_final > 0)) throw ConfigError("lr_final must be positive");
    if (manifest.empty()) throw ConfigError("manifest is required");
    if (!std::filesystem::exists(manifest)) throw ConfigError("manifest not found: " + manifest.string());
    if (!init_checkpoint.empty() && !std::filesystem::exists(init_checkpoint))
        throw ConfigError("init_checkpoint not found: " + init_checkpoint.string());
}

std::string RunConfig::to_text() const {
    std::ostringstream os;
    os << model.to_text();
    os << "alpha1=" << loss.alpha1 << "\nalpha1_after_switch=" << loss.alpha1_after_switch << "\nalpha2=" << loss.alpha2
       << "\nlambda=" << loss.lambda << "\nswitch_iter=" << loss.switch_iter << "\ncx_patch=" << cx.patch
       << "\ncx_stride=" << cx.grid_stride << "\ncx_out_stride=" << cx.out_stride << "\ncx_bandwidth=" << cx.bandwidth
       << "\ncx_epsilon=" << cx.epsilon << "\nlr=" << adam.learning_rate << "\nbeta1=" << adam.beta1
       << "\nbeta2=" << adam.beta2 << "\nadam_eps=" << adam.epsilon << "\npatch=" << patch << "\nviews=" << views
       << "\niterations=" << iterations << (seed ? "\nseed=" + std::to_string(*seed) : std::string()) << "\nmanifest="
       << manifest.string() << "\nsplit=" << split << "\ncheckpoint=" << checkpoint.string()
       << "\ninit_checkpoint=" << init_checkpoint.string() << "\nloss_log=" << loss_log.string()
       << "\ncheckpoint_every=" << checkpoint_every << "\nuse_hist=" << (use_hist ? 1 : 0)
       << "\naugment=" << (augment ? 1 : 0) << "\n";
    if (lr_final) os << "lr_final=" << *lr_final << "\n";
    return os.str();
}

} // namespace l3f::app
