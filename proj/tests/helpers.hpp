#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "codedmat/matrix.hpp"

namespace testutil {

using codedmat::Fe;
using codedmat::FieldMatrix;
using codedmat::PrimeField;

/// Extended-Euclid inverse, independent of the library's Fermat-power route.
inline std::uint64_t euclid_inverse(std::uint64_t a, std::uint64_t p) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

/// All size-k index subsets of {0, ..., n-1}.
inline std::vector<std::vector<std::size_t>> all_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> pick(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
            out.push_back(pick);
            return;
        }
        for (std::size_t i = start; i + (k - depth) <= n; ++i) {
            pick[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    return out;
}

/// `count` random size-k subsets of {0, ..., n-1}.
inline std::vector<std::vector<std::size_t>> random_subsets(std::size_t n, std::size_t k,
                                                            std::size_t count,
                                                            std::mt19937_64& rng) {
    std::vector<std::size_t> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = i;
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t c = 0; c < count; ++c) {
        std::shuffle(ids.begin(), ids.end(), rng);
        std::vector<std::size_t> pick(ids.begin(), ids.begin() + k);
        std::sort(pick.begin(), pick.end());
        out.push_back(std::move(pick));
    }
    return out;
}

/// Sparse polynomial with matrix coefficients, keyed by exponent. Used as the
/// expansion oracle for worker products.
using MatPoly = std::map<std::uint64_t, FieldMatrix>;

inline MatPoly matpoly_mul(const MatPoly& a, const MatPoly& b) {
    MatPoly out;
    for (const auto& [ea, ma] : a)
        for (const auto& [eb, mb] : b) {
            FieldMatrix prod = codedmat::matmul_serial(ma, mb);
            auto it = out.find(ea + eb);
            if (it == out.end())
                out.emplace(ea + eb, std::move(prod));
            else
                it->second = codedmat::add(it->second, prod);
        }
    return out;
}

inline FieldMatrix matpoly_eval(const MatPoly& p, const PrimeField& f, Fe x) {
    FieldMatrix acc;
    bool first = true;
    for (const auto& [e, m] : p) {
        FieldMatrix term = codedmat::scale(m, f.pow(x, e));
        if (first) {
            acc = std::move(term);
            first = false;
        } else {
            acc = codedmat::add(acc, term);
        }
    }
    return acc;
}

}  // namespace testutil
