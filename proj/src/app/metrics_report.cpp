#include "l3f/app/metrics_report.hpp"

#include "l3f/error.hpp"
#include "l3f/loss/metrics.hpp"

#include <cmath>

namespace l3f::app {
namespace {

nlohmann::ordered_json number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

} // namespace

nlohmann::ordered_json metrics_report(const lf::LightField& a, const lf::LightField& b) {
    if (a.views_u() != b.views_u() || a.views_v() != b.views_v() || a.height() != b.height() || a.width() != b.width())
        throw PreconditionError("light fields differ in dimensions");
    nlohmann::ordered_json doc;
    doc["dims"] = {a.views_u(), a.views_v(), a.height(), a.width(), 3};
    doc["views"] = nlohmann::ordered_json::array();
    double psnr_sum = 0, ssim_sum = 0;
    for (int u = 0; u < a.views_u(); ++u)
        for (int v = 0; v < a.views_v(); ++v) {
            const lf::Image x = a.view_image(u, v), y = b.view_image(u, v);
            const double p = loss::psnr(x, y), s = loss::ssim(x, y);
            psnr_sum += p;
            ssim_sum += s;
            nlohmann::ordered_json row;
            row["u"] = u;
            row["v"] = v;
            row["psnr"] = number(p);
            row["ssim"] = s;
            doc["views"].push_back(row);
        }
    const double n = static_cast<double>(a.view_count());
    doc["mean_psnr"] = number(psnr_sum / n);
    doc["mean_ssim"] = ssim_sum / n;
    return doc;
}

} // namespace l3f::app
