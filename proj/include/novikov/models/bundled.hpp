#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace novikov {

struct BundledText {
    std::string_view name;
    std::string_view text;
};

/// Model descriptions compiled in from data/models, sorted by name.
const std::vector<BundledText>& bundled_models();
/// Simplicial complexes compiled in from data/complexes, sorted by name.
const std::vector<BundledText>& bundled_complexes();

inline std::optional<std::string_view> find_bundled(const std::vector<BundledText>& items, std::string_view name) {
    for (const auto& b : items)
        if (b.name == name) return b.text;
    return std::nullopt;
}

}  // namespace novikov
