#include "novikov/ce/exterior.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>

namespace novikov {

ExteriorBasis::ExteriorBasis(int n) : n_(n), masks_(n + 1), index_(std::size_t{1} << n, 0) {
    std::vector<Mask> all;
    for (Mask m = 0; m < (Mask{1} << n); ++m) all.push_back(m);
    // Lexicographic order of increasing index tuples: compare lowest differing index.
    auto tuple_less = [](Mask a, Mask b) {
        while (a && b) {
            int ia = std::countr_zero(a), ib = std::countr_zero(b);
            if (ia != ib) return ia < ib;
            a &= a - 1;
            b &= b - 1;
        }
        return a == 0 && b != 0;
    };
    std::sort(all.begin(), all.end(), tuple_less);
    for (Mask m : all) {
        auto& bucket = masks_[degree_of(m)];
        index_[m] = bucket.size();
        bucket.push_back(m);
    }
}

const ExteriorBasis& ExteriorBasis::get(int n) {
    static std::array<std::unique_ptr<ExteriorBasis>, kMaxGenerators + 1> cache;
    static std::array<std::once_flag, kMaxGenerators + 1> flags;
    if (n < 0 || n > kMaxGenerators) throw std::invalid_argument("unsupported number of generators");
    std::call_once(flags[n], [n] { cache[n].reset(new ExteriorBasis(n)); });
    return *cache[n];
}

std::string format_form(const Form<Rational>& f, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Rational& c = f[i];
        if (c.is_zero()) continue;
        Rational mag = c.abs();
        if (out.empty())
            out += c.sign() < 0 ? "-" : "";
        else
            out += c.sign() < 0 ? " - " : " + ";
        Mask m = f.mask(i);
        std::string mono;
        for (Mask mm = m; mm; mm &= mm - 1) {
            if (!mono.empty()) mono += "^";
            mono += names.at(std::countr_zero(mm));
        }
        if (mono.empty()) {
            out += mag.str();
        } else {
            if (!mag.is_one()) out += mag.str() + " ";
            out += mono;
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace novikov
