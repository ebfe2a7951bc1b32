#include "legz/equation.hpp"

namespace legz {

std::string to_string(const LegendreEquation& eq) {
    return "a=" + to_string(eq.a) + " b=" + to_string(eq.b) + " c=" + to_string(eq.c);
}

std::string to_string(const Solution& sol) {
    return "x=" + to_string(sol.x) + " y=" + to_string(sol.y) + " z=" + to_string(sol.z);
}

}  // namespace legz
