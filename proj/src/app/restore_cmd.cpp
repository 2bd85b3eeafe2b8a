#include "l3f/app/restore_cmd.hpp"

#include "l3f/error.hpp"
#include "l3f/lf/io.hpp"
#include "l3f/lf/views.hpp"
#include "l3f/net/restore.hpp"

#include <regex>

namespace l3f::app {

std::vector<lf::ViewIndex> parse_views(const std::string& text) {
    static const std::regex item(R"(\s*(\d+)\s*,\s*(\d+)\s*)");
    std::vector<lf::ViewIndex> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(';', start);
        if (end == std::string::npos) end = text.size();
        const std::string part = text.substr(start, end - start);
        std::smatch m;
        if (!part.empty()) {
            if (!std::regex_match(part, m, item)) throw ConfigError("malformed view '" + part + "', expected u,v");
            out.push_back({std::stoi(m[1]), std::stoi(m[2])});
        }
        start = end + 1;
    }
    return out;
}

double run_restore(const RestoreCommand& cmd) {
    auto model = net::L3Fnet<float>::load(cmd.checkpoint);
    lf::LightField input = lf::load_lf4(cmd.input);
    const int n = model.config().grid;
    if (input.views_u() < n + 2 || input.views_v() < n + 2)
        throw ConfigError("checkpoint expects at least " + std::to_string(n + 2) + "x" + std::to_string(n + 2) +
                          " views (" + std::to_string(n) + "x" + std::to_string(n) + " working grid plus ring), input " +
                          cmd.input.string() + " has " + std::to_string(input.views_u()) + "x" +
                          std::to_string(input.views_v()));
    if (input.views_u() != n + 2 || input.views_v() != n + 2) input = lf::crop_central_grid(input, n);

    net::RestoreOptions opts;
    opts.views = cmd.views;
    opts.use_hist = cmd.use_hist;
    opts.workers = cmd.workers;
    const auto result = net::restore_lf(model, input, opts);
    lf::save_lf4(cmd.output, result.lf);
    if (!cmd.png_dir.empty()) lf::save_view_directory(cmd.png_dir, result.lf);
    return result.gamma;
}

} // namespace l3f::app
