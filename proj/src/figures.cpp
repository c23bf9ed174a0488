#include "tvtest/figures.hpp"

#include <cstdio>
#include <sstream>

#include "tvtest/errors.hpp"
#include "tvtest/transition.hpp"

namespace tvtest {

std::string emit_figure_data(std::size_t T, const std::vector<double>& gammas, double c) {
    if (T < 2) {
        throw InvalidInputError("figure: T must be >= 2");
    }
    if (gammas.empty()) {
        throw InvalidInputError("figure: at least one gamma is required");
    }
    for (double g : gammas) {
        validate(TransitionParams{g, c});
    }

    std::ostringstream out;
    out << "t";
    char buf[48];
    for (double g : gammas) {
        std::snprintf(buf, sizeof(buf), ",F_gamma_%g", g);
        out << buf;
    }
    out << '\n';
    for (std::size_t t = 1; t <= T; ++t) {
        out << t;
        for (double g : gammas) {
            std::snprintf(buf, sizeof(buf), ",%.12g",
                          transition_value(static_cast<double>(t), {g, c}));
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace tvtest
