#pragma once

namespace ekg::kernels {

// Inputs for the wave / Klein-Gordon right-hand side on n cells.
// g, p: padded arrays (two ghosts each side), cell i lives at g[i + 2].
// flux: n + 1 face coefficients r e^{alpha - beta}; flux[0] is the axis face.
// acoef: e^{alpha - beta} / (r h^2) per cell.
// damp: beta_t - alpha_t per cell.
// pot: m^2 e^{2 alpha - 2 gamma} per cell.
struct WaveInputs {
    const double* g;
    const double* p;
    const double* gt;
    const double* pt;
    const double* flux;
    const double* acoef;
    const double* damp;
    const double* pot;
    int n;
};

struct DensityInputs {
    const double* gt;
    const double* pt;
    const double* gr;
    const double* pr;
    const double* phi;
    const double* ea;  // e^{-2 alpha}
    const double* eb;  // e^{-2 beta}
    const double* eab; // e^{-alpha - beta}
    const double* ef;  // m^2 e^{-2 gamma}
    int n;
};

struct DensityOutputs {
    double* e;
    double* m;
    double* f;
    double* e_kin;
};

enum class Backend { scalar, avx2 };

void wave_accel_scalar(const WaveInputs& in, double* gtt, double* ptt);
void densities_scalar(const DensityInputs& in, const DensityOutputs& out);

bool avx2_compiled();
void wave_accel_avx2(const WaveInputs& in, double* gtt, double* ptt);
void densities_avx2(const DensityInputs& in, const DensityOutputs& out);

bool cpu_has_avx2();
Backend active_backend();
// Forces a backend; avx2 is ignored when unavailable.
void set_backend(Backend b);
void reset_backend();

void wave_accel(const WaveInputs& in, double* gtt, double* ptt);
void densities(const DensityInputs& in, const DensityOutputs& out);

} // namespace ekg::kernels
