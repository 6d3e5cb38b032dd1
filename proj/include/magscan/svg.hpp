#pragma once
#include "magscan/scan.hpp"

#include <string>
#include <vector>

namespace magscan {

// Data behind the two-panel figure: circle-limit parabolas with their lower
// envelope (left), annulus fiber curves with theirs (right).
struct FigureData {
    std::vector<double> left_B;                   // 0 < B < 10
    std::vector<std::vector<double>> left_curves; // (m - B/2)^2, m = 0..6
    std::vector<double> left_envelope;            // min over all integers m

    std::vector<double> right_B;                   // 0 < B < 8
    std::vector<std::vector<double>> right_curves; // lambda1(H_m(B)), m = 0..6
    std::vector<double> right_envelope;            // min over the plotted m
};

// Computes the figure data on the annulus Ri=1, Ro=3/2 (B sampled at j/20 so
// integer fields land exactly on grid points).
FigureData figure_data(std::size_t grid_n = 800, unsigned workers = 1);

// Minimal deterministic SVG emitter: two panels, dotted per-m curves, solid
// envelopes, fixed axes (left 0<B<10, right 0<B<8). Identical input bytes in,
// identical bytes out. Throws std::invalid_argument on empty input.
std::string emit_figure(const FigureData& data);

} // namespace magscan
