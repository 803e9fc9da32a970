#pragma once

#include "fracns/state.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>

namespace fracns {

/// Initial-data families:
///   gaussian-bumps   each component is a sum of `bumps` directional derivatives
///                    of Gaussians of the given width, centred in the middle half
///                    of the box (mean zero, compactly concentrated)
///   random-spectral  Hermitian random coefficients with envelope
///                    exp(-|m|^2 / width^2) in mode numbers, mean zero
///   zero             the equilibrium
/// The state is scaled by amplitude, or to energy_E0 = target_E0 when that is
/// set. Results are dealiased and depend only on (grid, spec, s_reg).
struct InitialDataSpec {
    std::string family = "gaussian-bumps";
    double amplitude = 1e-3;
    std::optional<double> target_E0;
    std::uint64_t seed = 1;
    double width = 1.0;
    int bumps = 3;
};

State make_initial_state(const GridPtr& grid, const InitialDataSpec& spec, double s_reg = 2.0);

/// Random real field with Gaussian envelope exp(-|m|^2 / width^2) over mode
/// numbers |m_i| <= max_mode, no Nyquist content, optionally mean zero.
SpectralField random_spectral_field(const GridPtr& grid, std::mt19937_64& rng, int max_mode,
                                    bool mean_zero = true, double width = 4.0);

} // namespace fracns
