#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "rissk/channel.hpp"
#include "rissk/rng.hpp"

namespace rissk {

enum class Scheme { ssk, rpm };

// One end-to-end configuration.  Average SNR is gamma_av() = es * omega / n0;
// the CLI reduces everything to that ratio, but es / n0 / omega stay explicit
// because the simulator needs absolute energies.
struct SystemConfig {
    int n = 1;        // reflecting elements
    int n_r = 2;      // receive branches
    double es = 1.0;  // symbol energy (0 allowed: zero-SNR studies)
    double n0 = 1.0;  // noise spectral density
    double k = 0.0;   // aggregate impairment level, k^2 = k_t^2 + k_r^2
    Scheme scheme = Scheme::ssk;
    int m_order = 4;  // PSK order M, RPM only
    NakagamiParams channel{};

    double gamma_av() const noexcept { return es * channel.omega / n0; }
};

void validate(const SystemConfig& cfg);

// Reflection-phase symbol: index is 1-based in {1, ..., M}, phase is
// 2 pi (index - 1) / M.
struct RpmSymbol {
    int index = 1;
    double phase = 0.0;
};

RpmSymbol rpm_symbol(int index, int m_order);
std::vector<RpmSymbol> rpm_constellation(int m_order);

// Combines transmit and receive impairment levels into the single k the
// analysis uses: k = sqrt(k_t^2 + k_r^2).
double aggregate_k(double k_t, double k_r);

// |z_p|^2 for every receive branch p given one channel realization, with the
// RIS phases aligned to branch `target` (0-based).  Draws the shared
// distortion term and per-branch noise from rng; draw order is fixed
// (distortion if k > 0, then branch noises in branch order).  For RPM the
// symbol's phase multiplies the reflected term.
std::vector<double> received_energies(const ChannelMatrix& h, int target, const SystemConfig& cfg,
                                      std::optional<RpmSymbol> symbol, Philox& rng);

// Index of the largest energy; ties resolve to the lowest index so the
// detector is a pure function of its input.
int greedy_detect(const std::vector<double>& energies);

// Scratch buffers for the hot Monte Carlo path.
struct LinkWorkspace {
    std::vector<std::complex<double>> phases;  // e^{j theta_{u,target}}
    std::vector<double> energies;
};

void received_energies(const ChannelMatrix& h, int target, const SystemConfig& cfg,
                       std::optional<RpmSymbol> symbol, Philox& rng, LinkWorkspace& ws);

}  // namespace rissk
