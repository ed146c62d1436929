#pragma once

#include <cassert>
#include <cmath>
#include <vector>

namespace nemflow {

// 2D array of doubles with one ghost ring.
//
// Interior indices run i in [0, nx), j in [0, ny); the ghost ring extends the
// valid range to [-1, nx] x [-1, ny].  Storage is row-major with i fastest,
// which fixes the reduction order used everywhere (bit-reproducible sums).
class Array2 {
public:
    Array2() = default;
    Array2(int nx, int ny)
        : nx_(nx), ny_(ny), stride_(nx + 2), data_(static_cast<size_t>(nx + 2) * (ny + 2), 0.0) {
        assert(nx >= 1 && ny >= 1);
    }

    int nx() const { return nx_; }
    int ny() const { return ny_; }

    double& operator()(int i, int j) {
        assert(i >= -1 && i <= nx_ && j >= -1 && j <= ny_);
        return data_[static_cast<size_t>(j + 1) * stride_ + (i + 1)];
    }
    double operator()(int i, int j) const {
        assert(i >= -1 && i <= nx_ && j >= -1 && j <= ny_);
        return data_[static_cast<size_t>(j + 1) * stride_ + (i + 1)];
    }

    void fill(double v) {
        for (auto& x : data_) x = v;
    }

    bool interior_finite() const {
        for (int j = 0; j < ny_; ++j)
            for (int i = 0; i < nx_; ++i)
                if (!std::isfinite((*this)(i, j))) return false;
        return true;
    }

    bool same_shape(const Array2& o) const { return nx_ == o.nx_ && ny_ == o.ny_; }

private:
    int nx_ = 0, ny_ = 0, stride_ = 2;
    std::vector<double> data_;
};

}  // namespace nemflow
