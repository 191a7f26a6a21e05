#pragma once

#include <cstdlib>
#include <string>
#include <vector>

namespace gog {

/// Freely reduced word in a free-group basis. Letters are nonzero ints:
/// +i is basis generator i-1, -i its inverse.
using Word = std::vector<int>;

inline void word_push(Word& w, int letter) {
    if (!w.empty() && w.back() == -letter)
        w.pop_back();
    else
        w.push_back(letter);
}

inline Word word_reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (int letter : w) word_push(out, letter);
    return out;
}

inline Word word_mul(const Word& a, const Word& b) {
    Word out = a;
    out.reserve(a.size() + b.size());
    for (int letter : b) word_push(out, letter);
    return out;
}

inline Word word_inv(const Word& a) {
    Word out;
    out.reserve(a.size());
    for (auto it = a.rbegin(); it != a.rend(); ++it) out.push_back(-*it);
    return out;
}

inline Word word_pow(const Word& a, long long n) {
    Word out;
    Word base = n >= 0 ? a : word_inv(a);
    for (long long i = 0; i < std::llabs(n); ++i) out = word_mul(out, base);
    return out;
}

/// Substitute images[i] for basis letter i+1.
inline Word word_substitute(const Word& w, const std::vector<Word>& images) {
    Word out;
    for (int letter : w) {
        const Word& img = images[static_cast<size_t>(std::abs(letter)) - 1];
        if (letter > 0)
            for (int x : img) word_push(out, x);
        else
            for (auto it = img.rbegin(); it != img.rend(); ++it) word_push(out, -*it);
    }
    return out;
}

inline std::string word_str(const Word& w, const std::vector<std::string>& names) {
    if (w.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        int letter = w[i];
        long long run = letter > 0 ? 1 : -1;
        size_t j = i;
        while (j + 1 < w.size() && std::abs(w[j + 1]) == std::abs(letter) &&
               ((w[j + 1] > 0) == (letter > 0))) {
            run += letter > 0 ? 1 : -1;
            ++j;
        }
        if (!s.empty()) s += " ";
        s += names[static_cast<size_t>(std::abs(letter)) - 1];
        if (run != 1) s += "^" + std::to_string(run);
        i = j;
    }
    return s;
}

} // namespace gog
