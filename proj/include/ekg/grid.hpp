#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace ekg {

struct SimConfig;

struct RadialGrid {
    int n_cells = 0;
    double spacing = 0.0;
    double r_max = 0.0;
    std::vector<double> centers;
    static constexpr int n_ghost = 2;

    double r(int i) const { return (i + 0.5) * spacing; }
    double face(int i) const { return i * spacing; } // left face of cell i
};

RadialGrid build_grid(const SimConfig& config);
RadialGrid build_grid(int n_cells, double r_max, int min_cells = 16);

// Cell-centred field with two ghost cells on each side.
// Valid indices are [-2, n+1].
class GridField {
  public:
    GridField() = default;
    explicit GridField(int n, double value = 0.0) : n_(n), data_(n + 4, value) {}

    int size() const { return n_; }
    double& operator[](int i) { return data_[i + 2]; }
    double operator[](int i) const { return data_[i + 2]; }
    double* interior() { return data_.data() + 2; }
    const double* interior() const { return data_.data() + 2; }
    double* padded() { return data_.data(); }
    const double* padded() const { return data_.data(); }
    const std::vector<double>& raw() const { return data_; }

    void fill(double v) { std::fill(data_.begin(), data_.end(), v); }
    bool operator==(const GridField& o) const { return n_ == o.n_ && data_ == o.data_; }

  private:
    int n_ = 0;
    std::vector<double> data_;
};

enum class Parity { even, odd };

// Axis-side ghosts by reflection, outer ghosts by copy-out.
void fill_ghosts(GridField& f, Parity p = Parity::even);

// Even extrapolant to r = 0, exact for a + b r^2.
double axis_value(const GridField& f);

// Cubic Lagrange interpolation at any r in [0, r_max]; ghosts must be filled.
double interpolate(const GridField& f, const RadialGrid& g, double r);

// Second-order centred first derivative at cell i; ghosts must be filled.
inline double d_dr(const GridField& f, int i, double h) { return (f[i + 1] - f[i - 1]) / (2.0 * h); }

} // namespace ekg
