#pragma once

#include <optional>

namespace decaylab {

// Time scales separating the decay regimes of the lower-edge background.
//
// delta_q is the signed gap z + 1 between the real discrete state nearest the
// lower band edge and the edge. t_q = 1/|delta_q| (infinity when the gap is
// closed). t_2 marks the start of the long-time regime: (5 + eps_d)/(2(1 + eps_d))
// for Model I and 1 for Model II. t_3, t_4 and the closed-form t_q are Model I
// quantities valid for eps_d > -1.
struct ZoneScales {
    std::optional<double> delta_q;
    std::optional<double> t_q;
    double t_2 = 1.0;
    std::optional<double> t_3;
    std::optional<double> t_4;
    std::optional<double> t_q_closed_form;
};

}  // namespace decaylab
