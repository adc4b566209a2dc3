#include "ekg/grid.hpp"

#include "ekg/config.hpp"
#include "ekg/errors.hpp"

#include <cmath>
#include <string>

namespace ekg {

RadialGrid build_grid(int n_cells, double r_max, int min_cells) {
    if (n_cells < min_cells)
        throw ConfigError("n_cells must be at least " + std::to_string(min_cells));
    if (!std::isfinite(r_max) || r_max <= 0.0)
        throw ConfigError("r_max must be finite and positive");
    RadialGrid g;
    g.n_cells = n_cells;
    g.r_max = r_max;
    g.spacing = r_max / n_cells;
    g.centers.resize(n_cells);
    for (int i = 0; i < n_cells; ++i) g.centers[i] = g.r(i);
    return g;
}

RadialGrid build_grid(const SimConfig& config) { return build_grid(config.n_cells, config.r_max, 16); }

void fill_ghosts(GridField& f, Parity p) {
    const int n = f.size();
    const double s = p == Parity::even ? 1.0 : -1.0;
    f[-1] = s * f[0];
    f[-2] = s * f[1];
    f[n] = f[n - 1];
    f[n + 1] = f[n - 1];
}

double axis_value(const GridField& f) { return (9.0 * f[0] - f[1]) / 8.0; }

double interpolate(const GridField& f, const RadialGrid& g, double r) {
    const double h = g.spacing;
    const double x = r / h - 0.5;
    int i = static_cast<int>(std::floor(x));
    i = std::clamp(i, -1, g.n_cells - 1);
    const double t = x - i;
    const double p0 = f[i - 1], p1 = f[i], p2 = f[i + 1], p3 = f[i + 2];
    const double a = t + 1.0, b = t, c = t - 1.0, d = t - 2.0;
    return -p0 * b * c * d / 6.0 + p1 * a * c * d / 2.0 - p2 * a * b * d / 2.0 + p3 * a * b * c / 6.0;
}

} // namespace ekg
