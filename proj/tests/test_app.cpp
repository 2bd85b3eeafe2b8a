#include "l3f/app/metrics_report.hpp"
#include "l3f/app/restore_cmd.hpp"
#include "l3f/app/run_config.hpp"
#include "l3f/app/train.hpp"
#include "l3f/error.hpp"
#include "l3f/lf/io.hpp"
#include "l3f/lf/views.hpp"
#include "l3f/net/model.hpp"
#include "l3f/synth/dataset.hpp"
#include "l3f/synth/scene.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace l3f;
using test::TempDir;

namespace {

int cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = "env -u L3F_SEED " + env + " " + L3F_CLI + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

const char* kTinyModel = "--set s1_blocks=1 --set s2_blocks=1 --set channels=8 --set transpose_channels=6 "
                         "--set grid=2 --set hist_bins=8";

class EnvGuard {
public:
    explicit EnvGuard(const char* value) {
        if (const char* old = std::getenv("L3F_SEED")) saved_ = old;
        if (value) ::setenv("L3F_SEED", value, 1);
        else ::unsetenv("L3F_SEED");
    }
    ~EnvGuard() {
        if (saved_) ::setenv("L3F_SEED", saved_->c_str(), 1);
        else ::unsetenv("L3F_SEED");
    }

private:
    std::optional<std::string> saved_;
};

// Four 4x4-view scenes (grid 2 plus ring), 32x32 pixels.
void make_dataset(const TempDir& dir) {
    ASSERT_EQ(cli("synth --out-dir " + dir.path().string() +
                  " --scenes 2 --views 4 --height 32 --width 32 --noise-seed 5 --seed 11"),
              0);
}

app::RunConfig tiny_run(const TempDir& dir) {
    app::RunConfig cfg;
    for (const auto& [k, v] : std::vector<std::pair<std::string, std::string>>{{"s1_blocks", "1"},
                                                                              {"s2_blocks", "1"},
                                                                              {"channels", "8"},
                                                                              {"transpose_channels", "6"},
                                                                              {"grid", "2"},
                                                                              {"hist_bins", "8"},
                                                                              {"patch", "16"},
                                                                              {"views", "4"},
                                                                              {"iterations", "3"},
                                                                              {"switch_iter", "1"},
                                                                              {"seed", "9"}})
        cfg.set(k, v);
    cfg.manifest = dir / "manifest.json";
    cfg.checkpoint = dir / "model.ckpt";
    cfg.loss_log = dir / "loss.csv";
    return cfg;
}

} // namespace

TEST(RunConfig, SetAndFile) {
    TempDir dir("runcfg");
    {
        std::ofstream os(dir / "run.cfg");
        os << "# run\nchannels=16\nlr=0.002\nviews=3\nseed=42\nuse_hist=false\nsplit=test\n";
    }
    app::RunConfig cfg;
    cfg.load_file(dir / "run.cfg");
    EXPECT_EQ(cfg.model.channels, 16);
    EXPECT_DOUBLE_EQ(cfg.adam.learning_rate, 0.002);
    EXPECT_EQ(cfg.views, 3);
    EXPECT_EQ(cfg.seed, 42u);
    EXPECT_FALSE(cfg.use_hist);
    EXPECT_EQ(cfg.split, "test");
    cfg.set("cx_out_stride", "2");
    EXPECT_EQ(cfg.cx.out_stride, 2);
}

TEST(RunConfig, Errors) {
    app::RunConfig cfg;
    EXPECT_THROW(cfg.set("learning_rate", "1"), ConfigError);
    EXPECT_THROW(cfg.set("lr", "fast"), ConfigError);
    EXPECT_THROW(cfg.set("use_hist", "maybe"), ConfigError);
    EXPECT_THROW(cfg.set("seed", "-3"), ConfigError);
    EXPECT_THROW(cfg.load_file("/nonexistent/run.cfg"), IoError);
}

TEST(RunConfig, SeedFromEnvironment) {
    TempDir dir("runcfg_env");
    std::ofstream(dir / "manifest.json") << "{\"entries\": []}";
    app::RunConfig cfg;
    cfg.manifest = dir / "manifest.json";
    {
        EnvGuard env(nullptr);
        app::RunConfig c = cfg;
        EXPECT_THROW(c.finalize(), ConfigError);
    }
    {
        EnvGuard env("1234");
        app::RunConfig c = cfg;
        c.finalize();
        EXPECT_EQ(c.seed, 1234u);
        app::RunConfig explicit_seed = cfg;
        explicit_seed.seed = 7;
        explicit_seed.finalize();
        EXPECT_EQ(explicit_seed.seed, 7u);
    }
    {
        EnvGuard env("12ab");
        app::RunConfig c = cfg;
        EXPECT_THROW(c.finalize(), ConfigError);
    }
}

TEST(RunConfig, FinalizeChecksInputs) {
    app::RunConfig cfg;
    cfg.seed = 1;
    EXPECT_THROW(cfg.finalize(), ConfigError);
    cfg.manifest = "/nonexistent/manifest.json";
    EXPECT_THROW(cfg.finalize(), ConfigError);
    TempDir dir("runcfg_inputs");
    std::ofstream(dir / "manifest.json") << "{\"entries\": []}";
    cfg.manifest = dir / "manifest.json";
    cfg.finalize();
    cfg.patch = 15;
    EXPECT_THROW(cfg.finalize(), ConfigError);
    cfg.patch = 16;
    cfg.adam.learning_rate = 0;
    EXPECT_THROW(cfg.finalize(), ConfigError);
    cfg.adam.learning_rate = 1e-3;
    cfg.lr_final = 0.0;
    EXPECT_THROW(cfg.finalize(), ConfigError);
}

TEST(LearningRate, ConstantAndCosine) {
    app::RunConfig cfg;
    cfg.adam.learning_rate = 2e-3;
    cfg.iterations = 101;
    EXPECT_DOUBLE_EQ(app::learning_rate(cfg, 0), 2e-3);
    EXPECT_DOUBLE_EQ(app::learning_rate(cfg, 100), 2e-3);
    cfg.set("lr_final", "1e-5");
    ASSERT_TRUE(cfg.lr_final);
    EXPECT_DOUBLE_EQ(app::learning_rate(cfg, 0), 2e-3);
    EXPECT_NEAR(app::learning_rate(cfg, 50), 0.5 * (2e-3 + 1e-5), 1e-15);
    EXPECT_DOUBLE_EQ(app::learning_rate(cfg, 100), 1e-5);
    EXPECT_DOUBLE_EQ(app::learning_rate(cfg, 500), 1e-5);
    for (std::uint64_t i = 1; i <= 100; ++i)
        EXPECT_LE(app::learning_rate(cfg, i), app::learning_rate(cfg, i - 1));
    EXPECT_NE(cfg.to_text().find("lr_final="), std::string::npos);
    EXPECT_THROW(cfg.set("lr_final", "x"), ConfigError);
}

TEST(ParseViews, Forms) {
    const auto v = app::parse_views("3,3; 4 , 5;0,7");
    ASSERT_EQ(v.size(), 3u);
    EXPECT_EQ(v[0], (lf::ViewIndex{3, 3}));
    EXPECT_EQ(v[1], (lf::ViewIndex{4, 5}));
    EXPECT_EQ(v[2], (lf::ViewIndex{0, 7}));
    EXPECT_TRUE(app::parse_views("").empty());
    EXPECT_THROW(app::parse_views("3"), ConfigError);
    EXPECT_THROW(app::parse_views("a,b"), ConfigError);
    EXPECT_THROW(app::parse_views("-1,2"), ConfigError);
}

TEST(Metrics, IdenticalAndOffset) {
    const auto a = test::random_lf(2, 2, 16, 16, 3, 0.2f, 0.8f);
    const auto same = app::metrics_report(a, a);
    EXPECT_EQ(same["mean_psnr"], "inf");
    EXPECT_DOUBLE_EQ(same["mean_ssim"].get<double>(), 1.0);
    auto b = a;
    for (float& x : b.data()) x += 0.1f;
    const auto off = app::metrics_report(a, b);
    EXPECT_NEAR(off["mean_psnr"].get<double>(), 20.0, 1e-4);
    ASSERT_EQ(off["views"].size(), 4u);
    EXPECT_NEAR(off["views"][3]["psnr"].get<double>(), 20.0, 1e-4);
    EXPECT_THROW(app::metrics_report(a, test::random_lf(2, 2, 16, 17, 3)), PreconditionError);
}

TEST(Metrics, KeyOrder) {
    const auto a = test::random_lf(1, 2, 12, 12, 1);
    const auto doc = app::metrics_report(a, a);
    std::vector<std::string> keys;
    for (const auto& [k, v] : doc.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"dims", "views", "mean_psnr", "mean_ssim"}));
    std::vector<std::string> row;
    for (const auto& [k, v] : doc["views"][0].items()) row.push_back(k);
    EXPECT_EQ(row, (std::vector<std::string>{"u", "v", "psnr", "ssim"}));
    EXPECT_EQ(doc["dims"], nlohmann::ordered_json::parse("[1, 2, 12, 12, 3]"));
}

TEST(Cli, ExitCodes) {
    TempDir dir("cli_codes");
    EXPECT_EQ(cli("--help"), 0);
    EXPECT_EQ(cli("no-such-command"), 2);
    EXPECT_EQ(cli("restore --input x.lf4"), 2);
    EXPECT_EQ(cli("init --out " + (dir / "a.ckpt").string()), 2);
    EXPECT_EQ(cli("init --out " + (dir / "a.ckpt").string(), "L3F_SEED=12ab"), 2);
    EXPECT_EQ(cli("init --out " + (dir / "a.ckpt").string(), "L3F_SEED=-1"), 2);
    EXPECT_EQ(cli("init --set grid=2 --out " + (dir / "env.ckpt").string(), "L3F_SEED=5"), 0);
    EXPECT_EQ(cli("init --seed 1 --set grid=0 --out " + (dir / "a.ckpt").string()), 2);
    EXPECT_EQ(cli("init --seed 1 --set bogus=1 --out " + (dir / "a.ckpt").string()), 2);
    EXPECT_EQ(cli("metrics /nonexistent/a.lf4 /nonexistent/b.lf4"), 3);
    std::ofstream(dir / "garbage.lf4") << "not a light field";
    EXPECT_EQ(cli("metrics " + (dir / "garbage.lf4").string() + " " + (dir / "garbage.lf4").string()), 3);
    EXPECT_EQ(cli("train --seed 1 --manifest /nonexistent/manifest.json"), 2);
}

TEST(Cli, InitRestoreMetrics) {
    TempDir dir("cli_restore");
    const auto ckpt = (dir / "init.ckpt").string();
    ASSERT_EQ(cli(std::string("init --seed 3 ") + kTinyModel + " --out " + ckpt), 0);
    const auto low = test::random_lf(4, 4, 16, 16, 8, 0.0f, 0.3f);
    lf::save_lf4(dir / "low.lf4", low);
    const std::string base = "restore --checkpoint " + ckpt + " --input " + (dir / "low.lf4").string();

    ASSERT_EQ(cli(base + " --no-hist --output " + (dir / "out.lf4").string()), 0);
    const auto out = lf::load_lf4(dir / "out.lf4");
    EXPECT_EQ(out, lf::strip_ring(low, 1));

    ASSERT_EQ(cli(base + " --no-hist --views \"1,0\" --output " + (dir / "one.lf4").string()), 0);
    const auto one = lf::load_lf4(dir / "one.lf4");
    ASSERT_EQ(one.views_u(), 1);
    ASSERT_EQ(one.views_v(), 1);
    EXPECT_EQ(one.view_image(0, 0), low.view_image(2, 1));

    ASSERT_EQ(cli(base + " --workers 1 --output " + (dir / "w1.lf4").string()), 0);
    ASSERT_EQ(cli(base + " --workers 8 --output " + (dir / "w8.lf4").string()), 0);
    EXPECT_EQ(slurp(dir / "w1.lf4"), slurp(dir / "w8.lf4"));

    EXPECT_EQ(cli(base + " --views \"5,5\" --output " + (dir / "bad.lf4").string()), 2);
    lf::save_lf4(dir / "small.lf4", test::random_lf(3, 3, 16, 16, 1));
    EXPECT_EQ(cli("restore --checkpoint " + ckpt + " --input " + (dir / "small.lf4").string() + " --output " +
                  (dir / "bad.lf4").string()),
              2);

    ASSERT_EQ(cli("metrics " + (dir / "out.lf4").string() + " " + (dir / "out.lf4").string() + " --out " +
                  (dir / "m.json").string()),
              0);
    const auto doc = nlohmann::ordered_json::parse(slurp(dir / "m.json"));
    EXPECT_EQ(doc["mean_psnr"], "inf");
    EXPECT_DOUBLE_EQ(doc["mean_ssim"].get<double>(), 1.0);
}

TEST(Cli, RestoreCropsLargerInput) {
    TempDir dir("cli_crop");
    const auto ckpt = (dir / "init.ckpt").string();
    ASSERT_EQ(cli(std::string("init --seed 3 ") + kTinyModel + " --out " + ckpt), 0);
    const auto low = test::random_lf(7, 7, 16, 16, 2);
    lf::save_lf4(dir / "low.lf4", low);
    ASSERT_EQ(cli("restore --no-hist --checkpoint " + ckpt + " --input " + (dir / "low.lf4").string() +
                  " --output " + (dir / "out.lf4").string()),
              0);
    EXPECT_EQ(lf::load_lf4(dir / "out.lf4"), lf::strip_ring(lf::crop_central_grid(low, 2), 1));
}

TEST(Train, SeededLogIsReproducible) {
    TempDir dir("train_repro");
    make_dataset(dir);
    const std::string args = std::string("train ") + kTinyModel +
                             " --set patch=16 --set views=4 --set switch_iter=1 --seed 21 --iterations 3 --manifest " +
                             (dir / "manifest.json").string();
    ASSERT_EQ(cli(args + " --checkpoint " + (dir / "a.ckpt").string() + " --loss-log " + (dir / "a.csv").string()), 0);
    ASSERT_EQ(cli(args + " --checkpoint " + (dir / "b.ckpt").string() + " --loss-log " + (dir / "b.csv").string()), 0);
    const std::string log = slurp(dir / "a.csv");
    EXPECT_EQ(log, slurp(dir / "b.csv"));
    EXPECT_EQ(slurp(dir / "a.ckpt"), slurp(dir / "b.ckpt"));
    EXPECT_EQ(std::count(log.begin(), log.end(), '\n'), 4);
    EXPECT_EQ(log.substr(0, log.find('\n')), "iteration,alpha1,alpha2,l1,cx,penalty,total,gamma_mean");

    ASSERT_EQ(cli(std::string("train ") + kTinyModel +
                  " --set patch=16 --set views=4 --set switch_iter=1 --seed 22 --iterations 3 --manifest " +
                  (dir / "manifest.json").string() + " --checkpoint " + (dir / "c.ckpt").string() +
                  " --loss-log " + (dir / "c.csv").string()),
              0);
    EXPECT_NE(log, slurp(dir / "c.csv"));
}

TEST(Train, LoopMatchesRecordsAndSchedule) {
    TempDir dir("train_loop");
    make_dataset(dir);
    auto cfg = tiny_run(dir);
    cfg.finalize();
    const auto data = synth::load_dataset(cfg.manifest, cfg.model.grid);
    net::L3Fnet<float> model(cfg.model);
    model.init(*cfg.seed);
    std::ostringstream log;
    const auto records = app::train_loop(cfg, model, data, &log);
    ASSERT_EQ(records.size(), 3u);
    EXPECT_EQ(records[0].alpha1, 5.0);
    EXPECT_EQ(records[0].alpha2, 0.1);
    EXPECT_EQ(records[1].alpha1, 1.0);
    EXPECT_EQ(records[1].alpha2, 0.1);
    for (const auto& r : records) EXPECT_GT(r.cx, 0.0);
    for (const auto& r : records) {
        EXPECT_NEAR(r.total, r.alpha1 * r.l1 + r.alpha2 * r.cx + cfg.loss.lambda * r.penalty, 1e-5 * r.total);
        EXPECT_GT(r.gamma, 0.0);
    }
    std::ostringstream replay;
    app::write_log_header(replay);
    for (const auto& r : records) app::write_log_row(replay, r);
    EXPECT_EQ(log.str(), replay.str());
}

TEST(Train, NoHistTrainsStagesOnly) {
    TempDir dir("train_nohist");
    make_dataset(dir);
    auto cfg = tiny_run(dir);
    cfg.use_hist = false;
    cfg.finalize();
    const auto data = synth::load_dataset(cfg.manifest, cfg.model.grid);
    net::L3Fnet<float> model(cfg.model);
    model.init(*cfg.seed);
    const auto before = model.hist_mlp[0].weight.value;
    const auto records = app::train_loop(cfg, model, data);
    EXPECT_EQ(records.back().gamma, 1.0);
    EXPECT_EQ(model.hist_mlp[0].weight.value, before);
}

TEST(Train, NonFiniteLossSavesCheckpoint) {
    TempDir dir("train_nan");
    make_dataset(dir);
    auto cfg = tiny_run(dir);
    cfg.adam.learning_rate = 1e38;
    cfg.iterations = 10;
    EXPECT_THROW(app::run_train(cfg), NumericError);
    ASSERT_TRUE(std::filesystem::exists(cfg.checkpoint));
    const auto saved = net::L3Fnet<float>::load(cfg.checkpoint);
    EXPECT_EQ(saved.config(), cfg.model);
    const std::string log = slurp(cfg.loss_log);
    EXPECT_GE(std::count(log.begin(), log.end(), '\n'), 2);
}

TEST(Train, RunTrainWritesOutputs) {
    TempDir dir("train_run");
    make_dataset(dir);
    auto cfg = tiny_run(dir);
    const auto outcome = app::run_train(cfg);
    EXPECT_EQ(outcome.log.size(), 3u);
    const auto model = net::L3Fnet<float>::load(cfg.checkpoint);
    EXPECT_EQ(model.config(), cfg.model);

    auto resumed = tiny_run(dir);
    resumed.init_checkpoint = cfg.checkpoint;
    resumed.checkpoint = dir / "resumed.ckpt";
    EXPECT_EQ(app::run_train(resumed).log.size(), 3u);
    resumed.model.channels = 16;
    resumed.model.transpose_channels = 16;
    EXPECT_THROW(app::run_train(resumed), ConfigError);
}
