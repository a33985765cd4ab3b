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

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hypercluster {

/// A packed bit vector over GF(2). Used for 1-chains on edges, check rows,
/// and data-qubit slot sets. Addition is XOR and weight is popcount.
class BitChain {
   public:
    BitChain() = default;
    explicit BitChain(size_t num_bits) : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {
    }
    static BitChain from_indices(size_t num_bits, std::span<const int> indices);

    size_t size() const {
        return num_bits_;
    }
    bool get(size_t k) const {
        return (words_[k >> 6] >> (k & 63)) & 1;
    }
    void set(size_t k, bool value = true) {
        uint64_t mask = uint64_t{1} << (k & 63);
        if (value) {
            words_[k >> 6] |= mask;
        } else {
            words_[k >> 6] &= ~mask;
        }
    }
    void flip(size_t k) {
        words_[k >> 6] ^= uint64_t{1} << (k & 63);
    }
    void clear();

    BitChain &operator^=(const BitChain &other);
    BitChain &operator&=(const BitChain &other);
    friend BitChain operator^(BitChain a, const BitChain &b) {
        a ^= b;
        return a;
    }
    friend BitChain operator&(BitChain a, const BitChain &b) {
        a &= b;
        return a;
    }
    bool operator==(const BitChain &other) const = default;

    size_t weight() const;
    bool any() const;
    bool none() const {
        return !any();
    }
    /// Index of the lowest set bit, or -1 when empty.
    long first_one() const;
    std::vector<int> ones() const;
    std::string str() const;

    std::span<uint64_t> words() {
        return words_;
    }
    std::span<const uint64_t> words() const {
        return words_;
    }

   private:
    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

/// GF(2) inner product: parity of |a & b|. Throws on length mismatch.
bool pairing(const BitChain &a, const BitChain &b);

}  // namespace hypercluster
