#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mire {

/// Which image axis carries the fixed-pattern stripes.
enum class Orientation { Columns, Lines };

/// Real-valued grayscale raster, row-major. Pixel (row, col) lives at
/// data[row * width + col]. Values are finite; files load into [0, 1].
class Image {
public:
    Image() = default;

    Image(std::size_t width, std::size_t height, double fill = 0.0)
        : width_(width), height_(height), data_(width * height, fill) {
        if (!std::isfinite(fill)) throw std::invalid_argument("Image: non-finite fill value");
    }

    Image(std::size_t width, std::size_t height, std::vector<double> data)
        : width_(width), height_(height), data_(std::move(data)) {
        if (data_.size() != width_ * height_)
            throw std::invalid_argument("Image: data length " + std::to_string(data_.size()) +
                                        " != " + std::to_string(width_) + "x" +
                                        std::to_string(height_));
        for (double v : data_)
            if (!std::isfinite(v)) throw std::invalid_argument("Image: non-finite sample");
    }

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double operator()(std::size_t row, std::size_t col) const noexcept {
        return data_[row * width_ + col];
    }
    double& operator()(std::size_t row, std::size_t col) noexcept {
        return data_[row * width_ + col];
    }

    std::span<const double> pixels() const noexcept { return data_; }
    std::span<double> pixels() noexcept { return data_; }

    std::vector<double> column(std::size_t col) const {
        std::vector<double> out(height_);
        for (std::size_t r = 0; r < height_; ++r) out[r] = (*this)(r, col);
        return out;
    }

    void set_column(std::size_t col, std::span<const double> values) {
        if (values.size() != height_) throw std::invalid_argument("Image::set_column: length mismatch");
        for (std::size_t r = 0; r < height_; ++r) (*this)(r, col) = values[r];
    }

    double mean() const noexcept {
        if (data_.empty()) return 0.0;
        long double acc = 0.0L;
        for (double v : data_) acc += v;
        return static_cast<double>(acc / static_cast<long double>(data_.size()));
    }

    friend bool operator==(const Image&, const Image&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<double> data_;
};

inline Image transpose(const Image& img) {
    Image out(img.height(), img.width());
    for (std::size_t r = 0; r < img.height(); ++r)
        for (std::size_t c = 0; c < img.width(); ++c) out(c, r) = img(r, c);
    return out;
}

/// Whole-sample mirror of an arbitrary index into [0, extent). The edge
/// sample is not repeated: extent 4 maps -2,-1,0..3,4,5 to 2,1,0..3,2,1.
inline std::size_t reflect_index(std::int64_t i, std::size_t extent) {
    if (extent == 0) throw std::invalid_argument("reflect_index: empty extent");
    if (extent == 1) return 0;
    const auto period = static_cast<std::int64_t>(2 * (extent - 1));
    std::int64_t m = i % period;
    if (m < 0) m += period;
    const auto n = static_cast<std::int64_t>(extent);
    return static_cast<std::size_t>(m < n ? m : period - m);
}

inline std::size_t reflect_column_index(std::int64_t i, std::size_t width) {
    return reflect_index(i, width);
}

}  // namespace mire
