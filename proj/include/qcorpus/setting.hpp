#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace qcorpus {

// The four coincidence settings: an unprimed/primed measurement choice on
// each side of the pair.
enum class Setting { AB, ABp, ApB, ApBp };

inline constexpr std::array<Setting, 4> kSettings{Setting::AB, Setting::ABp,
                                                  Setting::ApB, Setting::ApBp};

constexpr std::size_t setting_index(Setting s) { return static_cast<std::size_t>(s); }

// Stable key used in every file format.
std::string_view setting_key(Setting s);

// Human-readable form with primes, e.g. "A'B".
std::string_view setting_display(Setting s);

// Throws InputError on an unknown key.
Setting parse_setting(std::string_view key);

} // namespace qcorpus
