#pragma once

// Truncated Poincaré series: dimension counts indexed by degree 0..D.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace ghl {

struct GradedDims {
    std::vector<long long> c;  // c[i] = dimension in degree i, 0 <= i <= D

    GradedDims() = default;
    explicit GradedDims(int D) : c(D + 1, 0) {}

    int truncation() const { return (int)c.size() - 1; }
    long long at(int i) const { return (i >= 0 && i < (int)c.size()) ? c[i] : 0; }
    long long total() const {
        long long t = 0;
        for (auto v : c) t += v;
        return t;
    }

    static GradedDims one(int D) {
        GradedDims s(D);
        s.c[0] = 1;
        return s;
    }

    // truncated product
    GradedDims operator*(const GradedDims& o) const {
        int D = std::min(truncation(), o.truncation());
        GradedDims r(D);
        for (int i = 0; i <= D; ++i)
            for (int j = 0; i + j <= D; ++j) r.c[i + j] += at(i) * o.at(j);
        return r;
    }

    bool operator==(const GradedDims& o) const { return c == o.c; }

    // multiply by 1/(1 - t^e), truncated
    void divide_one_minus(int e) {
        for (int i = e; i < (int)c.size(); ++i) c[i] += c[i - e];
    }
    // multiply by (1 + t^e), truncated
    void times_one_plus(int e) {
        for (int i = (int)c.size() - 1; i >= e; --i) c[i] += c[i - e];
    }
    // multiply by (1 - t^e), truncated
    void times_one_minus(int e) {
        for (int i = (int)c.size() - 1; i >= e; --i) c[i] -= c[i - e];
    }

    // first degree where the two disagree, or -1 if equal up to the
    // shorter truncation
    int first_mismatch(const GradedDims& o) const {
        int D = std::min(truncation(), o.truncation());
        for (int i = 0; i <= D; ++i)
            if (at(i) != o.at(i)) return i;
        return -1;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (int i = 0; i < (int)c.size(); ++i) {
            if (c[i] == 0) continue;
            if (!first) os << " + ";
            if (i == 0)
                os << c[i];
            else if (c[i] == 1)
                os << "t^" << i;
            else
                os << c[i] << "t^" << i;
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }
};

// Dimension table indexed by degrees that may be negative (used for
// total-degree reports, where shriek classes live below zero).
struct ShiftedDims {
    int offset = 0;  // value at index k corresponds to degree k - offset
    std::vector<long long> c;

    long long at(int deg) const {
        int k = deg + offset;
        return (k >= 0 && k < (int)c.size()) ? c[k] : 0;
    }
    void bump(int deg, long long v) {
        int k = deg + offset;
        if (k < 0) {
            c.insert(c.begin(), size_t(-k), 0);
            offset -= k;
            k = 0;
        }
        if (k >= (int)c.size()) c.resize(k + 1, 0);
        c[k] += v;
    }
    long long total() const {
        long long t = 0;
        for (auto v : c) t += v;
        return t;
    }
    int min_degree() const {
        for (int k = 0; k < (int)c.size(); ++k)
            if (c[k] != 0) return k - offset;
        return 0;
    }
    int max_degree() const {
        for (int k = (int)c.size() - 1; k >= 0; --k)
            if (c[k] != 0) return k - offset;
        return 0;
    }
    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (int k = 0; k < (int)c.size(); ++k) {
            if (c[k] == 0) continue;
            if (!first) os << " + ";
            int d = k - offset;
            if (d == 0)
                os << c[k];
            else {
                if (c[k] != 1) os << c[k];
                os << "t^" << (d < 0 ? "(" + std::to_string(d) + ")" : std::to_string(d));
            }
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }
};

}  // namespace ghl
