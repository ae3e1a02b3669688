#include "qcorpus/setting.hpp"

#include <string>

#include "qcorpus/errors.hpp"

namespace qcorpus {

std::string_view setting_key(Setting s) {
    switch (s) {
    case Setting::AB: return "AB";
    case Setting::ABp: return "ABp";
    case Setting::ApB: return "ApB";
    case Setting::ApBp: return "ApBp";
    }
    return "AB";
}

std::string_view setting_display(Setting s) {
    switch (s) {
    case Setting::AB: return "AB";
    case Setting::ABp: return "AB'";
    case Setting::ApB: return "A'B";
    case Setting::ApBp: return "A'B'";
    }
    return "AB";
}

Setting parse_setting(std::string_view key) {
    for (Setting s : kSettings) {
        if (setting_key(s) == key) return s;
    }
    throw InputError("unknown setting key \"" + std::string(key) +
                     "\" (expected AB, ABp, ApB or ApBp)");
}

} // namespace qcorpus
