#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace mgp {

// Dense (year, day, hour) tensor, row-major. Small enough that we never
// bother with views or strides.
class Tensor3 {
public:
    Tensor3() = default;
    Tensor3(int ny, int nd, int nh, double fill = 0.0)
        : ny_(ny), nd_(nd), nh_(nh), v_(static_cast<size_t>(ny) * nd * nh, fill) {}

    double& at(int y, int d, int h) { return v_[idx(y, d, h)]; }
    double at(int y, int d, int h) const { return v_[idx(y, d, h)]; }

    int years() const { return ny_; }
    int days() const { return nd_; }
    int hours() const { return nh_; }
    bool empty() const { return v_.empty(); }
    size_t size() const { return v_.size(); }

    const std::vector<double>& data() const { return v_; }
    std::vector<double>& data() { return v_; }

    bool same_shape(const Tensor3& o) const {
        return ny_ == o.ny_ && nd_ == o.nd_ && nh_ == o.nh_;
    }

private:
    size_t idx(int y, int d, int h) const {
        assert(y >= 0 && y < ny_ && d >= 0 && d < nd_ && h >= 0 && h < nh_);
        return (static_cast<size_t>(y) * nd_ + d) * nh_ + h;
    }
    int ny_ = 0, nd_ = 0, nh_ = 0;
    std::vector<double> v_;
};

} // namespace mgp
