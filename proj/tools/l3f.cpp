#include "l3f/align/misalignment.hpp"
#include "l3f/app/gradcheck_suite.hpp"
#include "l3f/app/metrics_report.hpp"
#include "l3f/app/restore_cmd.hpp"
#include "l3f/app/run_config.hpp"
#include "l3f/app/train.hpp"
#include "l3f/error.hpp"
#include "l3f/lf/io.hpp"
#include "l3f/lf/views.hpp"
#include "l3f/net/model.hpp"
#include "l3f/pseudo/pseudo_lf.hpp"
#include "l3f/pseudo/receptive_field.hpp"
#include "l3f/synth/dataset.hpp"
#include "l3f/synth/lowlight.hpp"
#include "l3f/synth/scene.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace l3f;

enum Exit { ok = 0, generic = 1, config = 2, io = 3, numeric = 4 };

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("L3F_SEED")) return app::parse_seed("L3F_SEED", env);
    throw ConfigError("a seed is required (--seed or L3F_SEED)");
}

void emit_json(const nlohmann::ordered_json& doc, const std::string& out) {
    if (out.empty()) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream os(out);
    if (!os) throw IoError("cannot write " + out);
    os << doc.dump(2) << "\n";
}

struct SynthArgs {
    std::string out_dir = "dataset";
    int scenes = 4, views = 5, height = 64, width = 64;
    double disparity = 0.5;
    std::vector<double> divisors{20, 50, 100};
    double read = 0.002, shot = 0.0002;
    std::optional<std::uint64_t> noise_seed, seed;
    std::string input, output;
    double divisor = 20;
};

int run_synth(const SynthArgs& a) {
    const std::uint64_t seed = resolve_seed(a.seed);
    if (!a.input.empty()) {
        if (a.output.empty()) throw ConfigError("--output is required with --input");
        synth::LowLightSpec spec{a.divisor, a.read, a.shot, seed};
        lf::save_lf4(a.output, synth::synth_lowlight(lf::load_lf4(a.input), spec));
        return ok;
    }
    std::filesystem::create_directories(a.out_dir);
    std::vector<synth::ManifestEntry> entries;
    for (int i = 0; i < a.scenes; ++i) {
        synth::SceneSpec s;
        s.views = a.views;
        s.height = a.height;
        s.width = a.width;
        s.disparity = a.disparity;
        s.seed = seed + static_cast<std::uint64_t>(i);
        const std::filesystem::path path = std::filesystem::path(a.out_dir) / ("scene_" + std::to_string(i) + ".lf4");
        lf::save_lf4(path, synth::generate_scene(s));
        synth::ManifestEntry e;
        e.gt = path;
        e.divisors = a.divisors;
        e.read_noise = a.read;
        e.shot_noise = a.shot;
        if (a.noise_seed) e.noise_seed = *a.noise_seed + static_cast<std::uint64_t>(i) * 1000;
        entries.push_back(e);
    }
    synth::write_manifest(std::filesystem::path(a.out_dir) / "manifest.json", entries);
    std::cout << "wrote " << a.scenes << " scenes and manifest.json to " << a.out_dir << "\n";
    return ok;
}

struct TrainArgs {
    std::string config_file;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::string manifest, checkpoint, loss_log;
    std::optional<std::uint64_t> iterations;
};

app::RunConfig build_run_config(const TrainArgs& a) {
    app::RunConfig cfg;
    if (!a.config_file.empty()) cfg.load_file(a.config_file);
    for (const auto& kv : a.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (a.seed) cfg.seed = a.seed;
    if (!a.manifest.empty()) cfg.manifest = a.manifest;
    if (!a.checkpoint.empty()) cfg.checkpoint = a.checkpoint;
    if (!a.loss_log.empty()) cfg.loss_log = a.loss_log;
    if (a.iterations) cfg.iterations = *a.iterations;
    return cfg;
}

int run_train_cmd(const TrainArgs& a) {
    const auto outcome = app::run_train(build_run_config(a));
    if (!outcome.log.empty()) {
        const auto& last = outcome.log.back();
        std::cout << "iterations " << outcome.log.size() << ", final l1 " << last.l1 << ", total " << last.total
                  << ", gamma " << last.gamma << "\n";
    }
    std::cout << "checkpoint " << outcome.checkpoint.string() << "\n";
    return ok;
}

int run_init_cmd(const TrainArgs& a, const std::string& out) {
    app::RunConfig cfg = build_run_config(a);
    const std::uint64_t seed = resolve_seed(cfg.seed);
    cfg.model.validate();
    net::L3Fnet<float> model(cfg.model);
    model.init(seed);
    model.save(out);
    std::cout << "initialized " << model.parameter_count() << " parameters into " << out << "\n";
    return ok;
}

int run_align(const std::string& gt, const std::string& dark, double preamp, std::uint64_t seed, const std::string& out) {
    align::AlignConfig cfg;
    cfg.seed = seed;
    const auto r = align::estimate_misalignment(lf::load_png(gt), lf::load_png(dark), preamp, cfg);
    nlohmann::ordered_json doc;
    doc["tx"] = r.tx;
    doc["ty"] = r.ty;
    doc["theta_deg"] = r.theta_deg;
    doc["inliers"] = r.inliers;
    doc["matches"] = r.matches;
    emit_json(doc, out);
    return ok;
}

int run_epi(const std::string& input, const std::string& orientation, int view, int coord, const std::string& out) {
    lf::EpiOrientation o;
    if (orientation == "h" || orientation == "horizontal") o = lf::EpiOrientation::horizontal;
    else if (orientation == "v" || orientation == "vertical") o = lf::EpiOrientation::vertical;
    else throw ConfigError("orientation must be horizontal or vertical");
    lf::save_png(out, lf::extract_epi(lf::load_lf4(input), o, view, coord).image);
    return ok;
}

int run_gradcheck_cmd(const app::GradcheckSuiteOptions& opts, double tolerance) {
    bool all = true;
    for (const auto& [name, report] : app::run_gradcheck_suite(opts)) {
        const bool pass = report.passed(tolerance);
        all = all && pass;
        std::cout << (pass ? "PASS " : "FAIL ") << name << " max_rel_error=" << report.max_rel_error() << "\n"
                  << report.to_string();
    }
    return all ? ok : numeric;
}

int run_receptive_field(int block, int size, std::uint64_t seed) {
    net::ModelConfig cfg;
    cfg.grid = block;
    net::L3Fnet<float> model(cfg);
    model.init(seed);
    std::mt19937_64 rng(seed);
    model.vrb_out.init(rng, 1.0f);
    const auto analytic = pseudo::analytic_receptive_field(block, 3, 1);
    const auto rf = pseudo::measure_receptive_field(
        pseudo::model_probe_network(model, size, size, block, {block / 2, block / 2}), size, size, seed);
    nlohmann::ordered_json doc;
    doc["block"] = block;
    doc["probe_size"] = size;
    doc["single_conv3_extent"] = analytic.extent_x;
    doc["measured_extent"] = {rf.extent_y, rf.extent_x};
    doc["measured_stride"] = {rf.stride_y, rf.stride_x};
    doc["lower_bound"] = rf.lower_bound;
    emit_json(doc, "");
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Low-light light-field restoration toolkit"};
    cli.require_subcommand(1);

    SynthArgs synth_args;
    auto* synth = cli.add_subcommand("synth", "generate synthetic scenes and a dataset manifest, or darken one LF");
    synth->add_option("--out-dir", synth_args.out_dir, "output directory");
    synth->add_option("--scenes", synth_args.scenes, "number of scenes");
    synth->add_option("--views", synth_args.views, "views per side (working grid plus ring)");
    synth->add_option("--height", synth_args.height);
    synth->add_option("--width", synth_args.width);
    synth->add_option("--disparity", synth_args.disparity, "pixels of shift per view");
    synth->add_option("--divisors", synth_args.divisors, "exposure divisors")->delimiter(',');
    synth->add_option("--read-noise", synth_args.read);
    synth->add_option("--shot-noise", synth_args.shot);
    synth->add_option("--noise-seed", synth_args.noise_seed, "fix the low-light realization per scene");
    synth->add_option("--seed", synth_args.seed);
    synth->add_option("--input", synth_args.input, "darken this .lf4 instead of generating scenes");
    synth->add_option("--output", synth_args.output);
    synth->add_option("--divisor", synth_args.divisor);

    TrainArgs train_args;
    auto* train = cli.add_subcommand("train", "train a model from a run config");
    std::string init_out;
    auto* init = cli.add_subcommand("init", "write a freshly initialized checkpoint");
    for (auto* sub : {train, init}) {
        sub->add_option("--config", train_args.config_file, "key=value run config");
        sub->add_option("--set", train_args.overrides, "key=value override, repeatable");
        sub->add_option("--seed", train_args.seed);
    }
    train->add_option("--manifest", train_args.manifest);
    train->add_option("--checkpoint", train_args.checkpoint);
    train->add_option("--loss-log", train_args.loss_log);
    train->add_option("--iterations", train_args.iterations);
    init->add_option("--out", init_out, "checkpoint path")->required();

    app::RestoreCommand restore_cmd;
    std::string views_text;
    bool no_hist = false;
    auto* restore = cli.add_subcommand("restore", "restore a low-light LF");
    restore->add_option("--checkpoint", restore_cmd.checkpoint)->required();
    restore->add_option("--input", restore_cmd.input)->required();
    restore->add_option("--output", restore_cmd.output)->required();
    restore->add_option("--views", views_text, "subset such as \"3,3;4,5\"");
    restore->add_flag("--no-hist", no_hist, "skip histogram amplification");
    restore->add_option("--workers", restore_cmd.workers);
    restore->add_option("--png-dir", restore_cmd.png_dir, "also export view_UU_VV.png files");

    std::string metrics_a, metrics_b, metrics_out;
    auto* metrics = cli.add_subcommand("metrics", "PSNR/SSIM report between two LFs");
    metrics->add_option("a", metrics_a)->required();
    metrics->add_option("b", metrics_b)->required();
    metrics->add_option("--out", metrics_out, "write the JSON report here");

    std::string align_gt, align_dark, align_out;
    double preamp = 1.0;
    std::optional<std::uint64_t> align_seed;
    auto* align_cmd = cli.add_subcommand("align", "estimate rigid misalignment between two views");
    align_cmd->add_option("--gt", align_gt)->required();
    align_cmd->add_option("--dark", align_dark)->required();
    align_cmd->add_option("--preamp", preamp);
    align_cmd->add_option("--seed", align_seed);
    align_cmd->add_option("--out", align_out);

    auto* pseudo_cmd = cli.add_subcommand("pseudo", "pseudo light-field codec");
    pseudo_cmd->require_subcommand(1);
    int block = 10;
    bool crop = false;
    std::string p_in, p_out;
    auto* pack = pseudo_cmd->add_subcommand("pack", "image -> pseudo-LF .lf4");
    pack->add_option("--block", block)->required();
    pack->add_option("--input", p_in)->required();
    pack->add_option("--output", p_out)->required();
    pack->add_flag("--crop-to-multiple", crop, "crop the image to a multiple of the block size");
    auto* unpack = pseudo_cmd->add_subcommand("unpack", "pseudo-LF .lf4 -> image");
    unpack->add_option("--input", p_in)->required();
    unpack->add_option("--output", p_out)->required();
    int probe_size = 1000;
    std::optional<std::uint64_t> rf_seed;
    auto* rf = pseudo_cmd->add_subcommand("rf", "measure the default model's receptive field through the codec");
    rf->add_option("--block", block);
    rf->add_option("--probe-size", probe_size);
    rf->add_option("--seed", rf_seed);

    app::GradcheckSuiteOptions gc;
    double tolerance = 1e-4;
    auto* gradcheck = cli.add_subcommand("gradcheck", "finite-difference check of every layer and a tiny network");
    gradcheck->add_option("--channels", gc.channels);
    gradcheck->add_option("--patch", gc.patch);
    gradcheck->add_option("--entries", gc.max_entries_per_block, "entries per block, 0 = all");
    gradcheck->add_option("--tolerance", tolerance);

    std::string epi_in, epi_orient = "horizontal", epi_out;
    int epi_view = 0, epi_coord = 0;
    auto* epi = cli.add_subcommand("epi", "extract an epipolar-plane image");
    epi->add_option("--input", epi_in)->required();
    epi->add_option("--orientation", epi_orient);
    epi->add_option("--view", epi_view, "fixed angular coordinate");
    epi->add_option("--coord", epi_coord, "fixed spatial coordinate");
    epi->add_option("--output", epi_out)->required();

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = cli.exit(e);
        return code == 0 ? ok : config;
    }

    try {
        if (*synth) return run_synth(synth_args);
        if (*train) return run_train_cmd(train_args);
        if (*init) return run_init_cmd(train_args, init_out);
        if (*restore) {
            restore_cmd.views = app::parse_views(views_text);
            restore_cmd.use_hist = !no_hist;
            const double gamma = app::run_restore(restore_cmd);
            std::cout << "gamma " << gamma << "\n";
            return ok;
        }
        if (*metrics) {
            emit_json(app::metrics_report(lf::load_lf4(metrics_a), lf::load_lf4(metrics_b)), metrics_out);
            return ok;
        }
        if (*align_cmd) return run_align(align_gt, align_dark, preamp, align_seed.value_or(1), align_out);
        if (*pack) {
            lf::Image img = lf::load_png(p_in);
            if (crop) img = pseudo::crop_to_multiple(img, block);
            lf::save_lf4(p_out, pseudo::pack(img, block).views);
            return ok;
        }
        if (*unpack) {
            lf::save_png(p_out, pseudo::unpack(pseudo::from_light_field(lf::load_lf4(p_in))));
            return ok;
        }
        if (*rf) return run_receptive_field(block, probe_size, resolve_seed(rf_seed));
        if (*gradcheck) return run_gradcheck_cmd(gc, tolerance);
        if (*epi) return run_epi(epi_in, epi_orient, epi_view, epi_coord, epi_out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config;
    } catch (const PreconditionError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return config;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return io;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return generic;
    }
    return generic;
}
