#include "herding/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <sstream>

#include "herding/io.hpp"
#include "herding/metrics.hpp"

namespace herding {

namespace {

constexpr const char* kHerderColours[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string escape(const std::string& text)
{
    std::string out;
    for (char c : text) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

// Linear map from data to pixels with y pointing up.
struct Frame {
    double x0, x1, y0, y1;   // data range
    double left, top, width, height;  // pixel box

    double px(double x) const { return left + (x - x0) / (x1 - x0) * width; }
    double py(double y) const { return top + height - (y - y0) / (y1 - y0) * height; }
};

class Svg {
public:
    Svg(double w, double h) : w_(w), h_(h) {}

    void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width = 1.0,
              const std::string& extra = "")
    {
        body_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
              << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"" << extra << "/>\n";
    }
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, double width,
                  const std::string& extra = "")
    {
        if (pts.size() < 2) {
            return;
        }
        body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"" << extra
              << " points=\"";
        for (const auto& [x, y] : pts) {
            body_ << num(x) << ',' << num(y) << ' ';
        }
        body_ << "\"/>\n";
    }
    void circle(double cx, double cy, double r, const std::string& stroke, const std::string& fill,
                const std::string& extra = "")
    {
        body_ << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r) << "\" stroke=\""
              << stroke << "\" fill=\"" << fill << "\"" << extra << "/>\n";
    }
    void rect(double x, double y, double w, double h, const std::string& fill, const std::string& stroke = "none")
    {
        body_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\""
              << num(h) << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
    }
    void text(double x, double y, const std::string& s, int size = 12, const std::string& anchor = "middle",
              const std::string& extra = "")
    {
        body_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << size
              << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\"" << extra << ">" << escape(s)
              << "</text>\n";
    }
    std::string str() const
    {
        std::ostringstream os;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w_) << "\" height=\"" << num(h_)
           << "\" viewBox=\"0 0 " << num(w_) << ' ' << num(h_) << "\">\n"
           << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
           << body_.str() << "</svg>\n";
        return os.str();
    }

private:
    double w_, h_;
    std::ostringstream body_;
};

void axes(Svg& svg, const Frame& f, const std::string& xlabel, const std::string& ylabel, int ticks = 5)
{
    svg.rect(f.left, f.top, f.width, f.height, "none", "#444");
    for (int i = 0; i <= ticks; ++i) {
        const double xv = f.x0 + (f.x1 - f.x0) * i / ticks;
        const double yv = f.y0 + (f.y1 - f.y0) * i / ticks;
        const double xp = f.px(xv);
        const double yp = f.py(yv);
        svg.line(xp, f.top + f.height, xp, f.top + f.height + 4, "#444");
        svg.text(xp, f.top + f.height + 16, num(xv).substr(0, 6), 10);
        svg.line(f.left - 4, yp, f.left, yp, "#444");
        svg.text(f.left - 6, yp + 3, num(yv).substr(0, 6), 10, "end");
    }
    svg.text(f.left + f.width / 2, f.top + f.height + 34, xlabel, 12);
    svg.text(14, f.top + f.height / 2, ylabel, 12, "middle",
             " transform=\"rotate(-90 14 " + num(f.top + f.height / 2) + ")\"");
}

// Square data window around all points plus the buffer ring.
Frame square_frame(const std::vector<Point2>& points, const Arena& arena, double size)
{
    const double ring = arena.goal_radius + arena.buffer_width;
    double half = ring * 1.1;
    for (const auto& p : points) {
        if (p.finite()) {
            half = std::max({half, std::abs(p.x - arena.center.x) * 1.05, std::abs(p.y - arena.center.y) * 1.05});
        }
    }
    return {arena.center.x - half, arena.center.x + half, arena.center.y - half, arena.center.y + half,
            60.0, 40.0, size, size};
}

void arena_rings(Svg& svg, const Frame& f, const Arena& arena)
{
    const double scale = f.width / (f.x1 - f.x0);
    svg.circle(f.px(arena.center.x), f.py(arena.center.y), arena.goal_radius * scale, "#2ca02c", "#2ca02c",
               " fill-opacity=\"0.08\"");
    svg.circle(f.px(arena.center.x), f.py(arena.center.y), (arena.goal_radius + arena.buffer_width) * scale,
               "#999", "none", " stroke-dasharray=\"4 3\"");
}

bool save(const Svg& svg, const std::filesystem::path& path)
{
    write_text_file(path, svg.str());
    return true;
}

bool warn_empty(const std::filesystem::path& path)
{
    std::cerr << "warning: nothing to plot for " << path.string() << "\n";
    return false;
}

}  // namespace

bool plot_trajectory(const Trajectory& traj,
                     const Arena& arena,
                     const std::filesystem::path& path,
                     const std::string& title)
{
    if (traj.samples.empty()) {
        return warn_empty(path);
    }
    const std::size_t nh = traj.samples.front().herders.size();
    const std::size_t nt = traj.samples.front().targets.size();
    std::vector<Point2> all;
    for (const auto& w : traj.samples) {
        for (const auto& h : w.herders) all.push_back(h.position);
        for (const auto& t : w.targets) all.push_back(t.position);
    }
    const double size = 520.0;
    const Frame f = square_frame(all, arena, size);
    Svg svg(size + 90, size + 90);
    svg.text(60 + size / 2, 24, title, 14);
    arena_rings(svg, f, arena);

    // long trials are thinned to at most ~4000 vertices per path
    const std::size_t stride = std::max<std::size_t>(1, traj.samples.size() / 4000);
    for (std::size_t i = 0; i < nt; ++i) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t s = 0; s < traj.samples.size(); s += stride) {
            const auto& p = traj.samples[s].targets[i].position;
            pts.emplace_back(f.px(p.x), f.py(p.y));
        }
        svg.polyline(pts, "#555", 0.6, " stroke-opacity=\"0.7\"");
        svg.circle(pts.back().first, pts.back().second, 3.0, "#000", "#000");
    }
    for (std::size_t j = 0; j < nh; ++j) {
        const char* colour = kHerderColours[j % std::size(kHerderColours)];
        std::vector<std::pair<double, double>> pts;
        for (std::size_t s = 0; s < traj.samples.size(); s += stride) {
            const auto& p = traj.samples[s].herders[j].position;
            pts.emplace_back(f.px(p.x), f.py(p.y));
        }
        svg.polyline(pts, colour, 0.8, " stroke-opacity=\"0.6\"");
        svg.circle(pts.back().first, pts.back().second, 4.0, colour, colour);
        svg.text(f.left + f.width + 8, f.top + 14 + 14.0 * static_cast<double>(j), "herder " + std::to_string(j), 10,
                 "start", std::string(" fill=\"") + colour + "\"");
    }
    axes(svg, f, "x", "y");
    return save(svg, path);
}

bool plot_robot_trial(const RobotTrial& trial,
                      const Arena& arena,
                      const std::filesystem::path& path,
                      const std::string& title)
{
    if (trial.frames.empty()) {
        return warn_empty(path);
    }
    const std::size_t n = trial.frames.front().robots.size();
    const std::size_t nh = trial.realized.n_herders;
    std::vector<Point2> all;
    for (const auto& fr : trial.frames) {
        for (const auto& r : fr.robots) all.push_back(r.position);
        for (const auto& p : fr.references) all.push_back(p);
    }
    const double size = 520.0;
    const Frame f = square_frame(all, arena, size);
    Svg svg(size + 90, size + 90);
    svg.text(60 + size / 2, 24, title, 14);
    arena_rings(svg, f, arena);
    const std::size_t stride = std::max<std::size_t>(1, trial.frames.size() / 4000);
    for (std::size_t k = 0; k < n; ++k) {
        const std::string colour = k < nh ? kHerderColours[k % std::size(kHerderColours)] : "#555";
        std::vector<std::pair<double, double>> ref, real;
        for (std::size_t s = 0; s < trial.frames.size(); s += stride) {
            const auto& p = trial.frames[s].references[k];
            const auto& q = trial.frames[s].robots[k].position;
            ref.emplace_back(f.px(p.x), f.py(p.y));
            real.emplace_back(f.px(q.x), f.py(q.y));
        }
        svg.polyline(ref, colour, 0.6, " stroke-dasharray=\"3 3\" stroke-opacity=\"0.5\"");
        svg.polyline(real, colour, 1.0);
        svg.circle(real.back().first, real.back().second, 3.5, colour, colour);
    }
    axes(svg, f, "x", "y");
    return save(svg, path);
}

bool plot_spectra(const Trajectory& traj,
                  const SimulationConfig& config,
                  const std::filesystem::path& path,
                  double max_hz)
{
    if (traj.samples.size() < 4 || traj.n_herders == 0) {
        return warn_empty(path);
    }
    const double dt = sample_interval(traj);
    std::vector<PowerSpectrum> spectra;
    double p_max = 0.0;
    for (std::size_t j = 0; j < traj.n_herders; ++j) {
        const auto signal = herder_signal(traj, j, config.metrics.spectral_signal, config.arena);
        spectra.push_back(power_spectrum(signal, dt));
        for (std::size_t k = 1; k < spectra.back().power.size(); ++k) {
            if (spectra.back().frequency_hz[k] <= max_hz) {
                p_max = std::max(p_max, spectra.back().power[k]);
            }
        }
    }
    if (!(p_max > 0.0)) {
        return warn_empty(path);
    }
    const Frame f{0.0, max_hz, 0.0, p_max * 1.05, 70.0, 40.0, 560.0, 320.0};
    Svg svg(680, 420);
    svg.text(f.left + f.width / 2, 24, "power spectrum (" + std::string(to_string(config.metrics.spectral_signal)) + ")",
             14);
    for (std::size_t j = 0; j < spectra.size(); ++j) {
        const char* colour = kHerderColours[j % std::size(kHerderColours)];
        std::vector<std::pair<double, double>> pts;
        for (std::size_t k = 1; k < spectra[j].power.size() && spectra[j].frequency_hz[k] <= max_hz; ++k) {
            pts.emplace_back(f.px(spectra[j].frequency_hz[k]), f.py(spectra[j].power[k]));
        }
        svg.polyline(pts, colour, 1.2);
        svg.text(f.left + f.width - 4, f.top + 14 + 14.0 * static_cast<double>(j), "herder " + std::to_string(j), 10,
                 "end", std::string(" fill=\"") + colour + "\"");
    }
    const double xc = f.px(config.metrics.cutoff_hz);
    svg.line(xc, f.top, xc, f.top + f.height, "#000", 1.0, " stroke-dasharray=\"5 4\"");
    axes(svg, f, "frequency [Hz]", "power");
    return save(svg, path);
}

bool plot_heatmap(const HeatmapGrid& grid, const std::filesystem::path& path)
{
    const std::size_t nx = grid.x_labels.size();
    const std::size_t ny = grid.y_labels.size();
    if (nx == 0 || ny == 0 || grid.values.size() != nx * ny) {
        return warn_empty(path);
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& v : grid.values) {
        if (v && std::isfinite(*v)) {
            lo = std::min(lo, *v);
            hi = std::max(hi, *v);
        }
    }
    const double cell_w = std::clamp(480.0 / static_cast<double>(nx), 8.0, 90.0);
    const double cell_h = std::clamp(360.0 / static_cast<double>(ny), 8.0, 60.0);
    const double left = 90.0, top = 40.0;
    const double width = cell_w * static_cast<double>(nx);
    const double height = cell_h * static_cast<double>(ny);
    Svg svg(left + width + 110, top + height + 60);
    svg.text(left + width / 2, 24, grid.title, 14);

    auto colour = [&](double v) {
        const double u = hi > lo ? (v - lo) / (hi - lo) : 0.5;
        // blue (low) to yellow (high)
        const int r = static_cast<int>(std::lround(40 + 215 * u));
        const int g = static_cast<int>(std::lround(60 + 170 * u));
        const int b = static_cast<int>(std::lround(160 - 120 * u));
        char buf[16];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
        return std::string(buf);
    };
    for (std::size_t y = 0; y < ny; ++y) {
        for (std::size_t x = 0; x < nx; ++x) {
            const auto& v = grid.values[y * nx + x];
            const double px = left + cell_w * static_cast<double>(x);
            const double py = top + height - cell_h * static_cast<double>(y + 1);
            svg.rect(px, py, cell_w, cell_h, v && std::isfinite(*v) ? colour(*v) : "#cccccc", "white");
            if (v && cell_w >= 40 && cell_h >= 16) {
                svg.text(px + cell_w / 2, py + cell_h / 2 + 4, num(*v).substr(0, 6), 10);
            }
        }
    }
    for (std::size_t x = 0; x < nx; ++x) {
        svg.text(left + cell_w * (static_cast<double>(x) + 0.5), top + height + 14, grid.x_labels[x], 10);
    }
    for (std::size_t y = 0; y < ny; ++y) {
        svg.text(left - 6, top + height - cell_h * (static_cast<double>(y) + 0.5) + 3, grid.y_labels[y], 10, "end");
    }
    svg.text(left + width / 2, top + height + 36, grid.x_name, 12);
    svg.text(16, top + height / 2, grid.y_name, 12, "middle",
             " transform=\"rotate(-90 16 " + num(top + height / 2) + ")\"");
    if (std::isfinite(lo)) {
        svg.rect(left + width + 20, top, 16, 16, colour(hi));
        svg.text(left + width + 40, top + 12, num(hi).substr(0, 7), 10, "start");
        svg.rect(left + width + 20, top + 22, 16, 16, colour(lo));
        svg.text(left + width + 40, top + 34, num(lo).substr(0, 7), 10, "start");
    }
    svg.rect(left + width + 20, top + 44, 16, 16, "#cccccc");
    svg.text(left + width + 40, top + 56, "no data", 10, "start");
    return save(svg, path);
}

}  // namespace herding
