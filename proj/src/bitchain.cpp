// Copyright 2026 The Hypercluster Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hypercluster/bitchain.hpp"

#include <stdexcept>

namespace hypercluster {

BitChain BitChain::from_indices(size_t num_bits, std::span<const int> indices) {
    BitChain out(num_bits);
    for (int k : indices) {
        if (k < 0 || static_cast<size_t>(k) >= num_bits) {
            throw std::out_of_range("bit index " + std::to_string(k) + " outside chain of length " +
                                    std::to_string(num_bits));
        }
        out.flip(static_cast<size_t>(k));
    }
    return out;
}

void BitChain::clear() {
    for (auto &w : words_) {
        w = 0;
    }
}

BitChain &BitChain::operator^=(const BitChain &other) {
    if (other.num_bits_ != num_bits_) {
        throw std::invalid_argument("BitChain length mismatch in xor");
    }
    for (size_t i = 0; i < words_.size(); i++) {
        words_[i] ^= other.words_[i];
    }
    return *this;
}

BitChain &BitChain::operator&=(const BitChain &other) {
    if (other.num_bits_ != num_bits_) {
        throw std::invalid_argument("BitChain length mismatch in and");
    }
    for (size_t i = 0; i < words_.size(); i++) {
        words_[i] &= other.words_[i];
    }
    return *this;
}

size_t BitChain::weight() const {
    size_t total = 0;
    for (uint64_t w : words_) {
        total += static_cast<size_t>(std::popcount(w));
    }
    return total;
}

bool BitChain::any() const {
    for (uint64_t w : words_) {
        if (w) {
            return true;
        }
    }
    return false;
}

long BitChain::first_one() const {
    for (size_t i = 0; i < words_.size(); i++) {
        if (words_[i]) {
            return static_cast<long>(i * 64 + std::countr_zero(words_[i]));
        }
    }
    return -1;
}

std::vector<int> BitChain::ones() const {
    std::vector<int> out;
    for (size_t i = 0; i < words_.size(); i++) {
        uint64_t w = words_[i];
        while (w) {
            out.push_back(static_cast<int>(i * 64 + std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

std::string BitChain::str() const {
    std::string s;
    s.reserve(num_bits_);
    for (size_t k = 0; k < num_bits_; k++) {
        s.push_back(get(k) ? '1' : '.');
    }
    return s;
}

bool pairing(const BitChain &a, const BitChain &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("pairing: chains of different length (" + std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    }
    auto wa = a.words();
    auto wb = b.words();
    uint64_t acc = 0;
    for (size_t i = 0; i < wa.size(); i++) {
        acc ^= wa[i] & wb[i];
    }
    return std::popcount(acc) & 1;
}

}  // namespace hypercluster
