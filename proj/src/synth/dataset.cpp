#include "l3f/synth/dataset.hpp"

#include "l3f/error.hpp"
#include "l3f/lf/io.hpp"
#include "l3f/net/histogram.hpp"
#include "l3f/synth/lowlight.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>

namespace l3f::synth {

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open manifest " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(is);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("manifest " + path.string() + ": " + e.what());
    }
    std::vector<ManifestEntry> out;
    try {
        for (const auto& j : doc.at("entries")) {
            ManifestEntry e;
            e.gt = j.at("gt").get<std::string>();
            if (e.gt.is_relative()) e.gt = path.parent_path() / e.gt;
            e.divisors = j.at("divisors").get<std::vector<double>>();
            if (e.divisors.empty()) throw ConfigError("manifest entry without divisors");
            if (j.contains("noise")) {
                const auto& n = j.at("noise");
                e.read_noise = n.value("read", 0.0);
                e.shot_noise = n.value("shot", 0.0);
                if (n.contains("seed")) e.noise_seed = n.at("seed").get<std::uint64_t>();
            }
            e.split = j.value("split", std::string("train"));
            out.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("manifest " + path.string() + ": " + e.what());
    }
    return out;
}

void write_manifest(const std::filesystem::path& path, const std::vector<ManifestEntry>& entries) {
    nlohmann::json doc;
    doc["entries"] = nlohmann::json::array();
    for (const auto& e : entries) {
        nlohmann::json j;
        std::filesystem::path gt = e.gt;
        if (gt.parent_path() == path.parent_path()) gt = gt.filename();
        j["gt"] = gt.string();
        j["divisors"] = e.divisors;
        j["noise"] = {{"read", e.read_noise}, {"shot", e.shot_noise}};
        if (e.noise_seed) j["noise"]["seed"] = *e.noise_seed;
        j["split"] = e.split;
        doc["entries"].push_back(j);
    }
    std::ofstream os(path);
    if (!os) throw IoError("cannot write manifest " + path.string());
    os << doc.dump(2) << "\n";
}

Dataset make_dataset(std::vector<ManifestEntry> entries, std::vector<lf::LightField> gts, int grid) {
    if (entries.size() != gts.size()) throw PreconditionError("entries and light fields differ in count");
    Dataset ds;
    ds.grid = grid;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        DatasetItem item;
        item.entry = std::move(entries[i]);
        item.gt = lf::crop_central_grid(gts[i], grid);
        if (item.entry.noise_seed)
            for (std::size_t k = 0; k < item.entry.divisors.size(); ++k) {
                LowLightSpec spec{item.entry.divisors[k], item.entry.read_noise, item.entry.shot_noise,
                                  *item.entry.noise_seed + k};
                item.fixed_low.push_back(synth_lowlight(item.gt, spec));
            }
        ds.items.push_back(std::move(item));
    }
    return ds;
}

Dataset load_dataset(const std::filesystem::path& manifest, int grid, const std::string& split) {
    std::vector<ManifestEntry> entries;
    std::vector<lf::LightField> gts;
    for (auto& e : read_manifest(manifest)) {
        if (!split.empty() && e.split != split) continue;
        gts.push_back(lf::load_lf4(e.gt));
        entries.push_back(std::move(e));
    }
    return make_dataset(std::move(entries), std::move(gts), grid);
}

TrainingExample sample_batch(const Dataset& ds, const SampleConfig& cfg, std::mt19937_64& rng) {
    if (ds.items.empty()) throw PreconditionError("dataset is empty");
    TrainingExample ex;
    ex.item = std::uniform_int_distribution<std::size_t>(0, ds.items.size() - 1)(rng);
    const DatasetItem& item = ds.items[ex.item];
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, item.entry.divisors.size() - 1)(rng);
    ex.divisor = item.entry.divisors[k];

    lf::LightField low;
    if (!item.fixed_low.empty()) {
        low = item.fixed_low[k];
    } else {
        LowLightSpec spec{ex.divisor, item.entry.read_noise, item.entry.shot_noise, rng()};
        low = synth_lowlight(item.gt, spec);
    }
    ex.hist = net::rgb_histogram<float>(low, cfg.hist_bins);

    ex.window = lf::sample_patch(low, cfg.patch, rng);
    ex.low = lf::crop_spatial(low, ex.window);
    ex.gt = lf::crop_spatial(item.gt, ex.window);

    const int n = ds.grid;
    std::vector<int> order(static_cast<std::size_t>(n) * n);
    std::iota(order.begin(), order.end(), 0);
    const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(std::max(cfg.views, 1)), order.size());
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = std::uniform_int_distribution<std::size_t>(i, order.size() - 1)(rng);
        std::swap(order[i], order[j]);
        ex.views.push_back({order[i] / n, order[i] % n});
    }

    if (cfg.augment) {
        ex.augmentation = draw_augmentation(rng);
        ex.low = apply_augmentation(ex.low, ex.augmentation);
        ex.gt = apply_augmentation(ex.gt, ex.augmentation);
        ex.hist = apply_augmentation(ex.hist, ex.augmentation);
    }
    return ex;
}

} // namespace l3f::synth
