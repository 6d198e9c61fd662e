#include "segment/image.hpp"

#include "segment/errors.hpp"

#include <png.h>
#include <jpeglib.h>

#include <algorithm>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace segment {

RgbImage::RgbImage(int width, int height)
    : RgbImage(width, height,
               std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(width, 0)) *
                                         std::max(height, 0) * kChannels)) {}

RgbImage::RgbImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width < 1 || height < 1) {
        throw ShapeMismatch("image dimensions must be positive");
    }
    if (data_.size() != static_cast<std::size_t>(width) * height * kChannels) {
        throw ShapeMismatch("pixel buffer length does not match width*height*3");
    }
}

ChannelHistogram ChannelHistogram::from_counts(const std::array<std::uint64_t, kLevels>& counts) {
    ChannelHistogram h;
    h.counts = counts;
    for (auto c : counts) h.total += c;
    if (h.total == 0) return h;
    const double n = static_cast<double>(h.total);
    for (int i = 0; i < kLevels; ++i) h.probabilities[i] = static_cast<double>(counts[i]) / n;
    return h;
}

ThresholdSet::ThresholdSet(std::vector<int> levels) : levels_(std::move(levels)) {
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (levels_[i] < 1 || levels_[i] > kLevels - 1) {
            throw InvalidRange("threshold " + std::to_string(levels_[i]) + " outside [1, 255]");
        }
        if (i > 0 && levels_[i] <= levels_[i - 1]) {
            throw InvalidRange("thresholds must be strictly increasing");
        }
    }
}

// ---------------------------------------------------------------------------
// PNG

namespace {

constexpr std::uint8_t narrow16(unsigned v) {
    return static_cast<std::uint8_t>((v * 255u + 32767u) / 65535u);
}

struct PngSource {
    std::span<const std::uint8_t> bytes;
    std::size_t offset = 0;
};

void png_read_from_span(png_structp png, png_bytep out, png_size_t length) {
    auto* src = static_cast<PngSource*>(png_get_io_ptr(png));
    if (src->offset + length > src->bytes.size()) {
        png_error(png, "truncated PNG stream");
    }
    std::memcpy(out, src->bytes.data() + src->offset, length);
    src->offset += length;
}

struct PngErrorState {
    char message[256] = "corrupt PNG";
};

void png_on_error(png_structp png, png_const_charp msg) {
    auto* state = static_cast<PngErrorState*>(png_get_error_ptr(png));
    std::snprintf(state->message, sizeof state->message, "%s", msg);
    png_longjmp(png, 1);
}

void png_on_warning(png_structp, png_const_charp) {}

// Raw decoded rows; kept as a plain struct so nothing non-trivial lives across setjmp.
struct PngRaw {
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int channels = 0;
    int bit_depth = 0;
    std::vector<std::uint8_t>* pixels = nullptr;
    std::vector<png_bytep>* rows = nullptr;
};

bool png_decode_raw(std::span<const std::uint8_t> bytes, PngRaw& raw, PngErrorState& err) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &err, png_on_error, png_on_warning);
    if (!png) return false;
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        return false;
    }
    PngSource src{bytes, 0};
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        return false;
    }
    png_set_read_fn(png, &src, png_read_from_span);
    png_read_info(png, info);

    const int color = png_get_color_type(png, info);
    const int depth = png_get_bit_depth(png, info);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    if (depth == 16) png_set_swap(png);  // host order for uint16 access
    png_read_update_info(png, info);

    raw.width = png_get_image_width(png, info);
    raw.height = png_get_image_height(png, info);
    raw.channels = png_get_channels(png, info);
    raw.bit_depth = png_get_bit_depth(png, info);
    const std::size_t rowbytes = png_get_rowbytes(png, info);
    raw.pixels->assign(rowbytes * raw.height, 0);
    raw.rows->resize(raw.height);
    for (png_uint_32 y = 0; y < raw.height; ++y) (*raw.rows)[y] = raw.pixels->data() + y * rowbytes;
    png_read_image(png, raw.rows->data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return true;
}

RgbImage decode_png(std::span<const std::uint8_t> bytes) {
    std::vector<std::uint8_t> pixels;
    std::vector<png_bytep> rows;
    PngRaw raw;
    raw.pixels = &pixels;
    raw.rows = &rows;
    PngErrorState err;
    if (!png_decode_raw(bytes, raw, err)) {
        throw DecodeError(std::string("PNG decode failed: ") + err.message);
    }
    if (raw.bit_depth != 8 && raw.bit_depth != 16) {
        throw UnsupportedDepth("unsupported PNG bit depth " + std::to_string(raw.bit_depth));
    }
    if (raw.channels != 1 && raw.channels != 3) {
        throw DecodeError("unexpected PNG channel count " + std::to_string(raw.channels));
    }
    const std::size_t n = static_cast<std::size_t>(raw.width) * raw.height;
    std::vector<std::uint8_t> rgb(n * kChannels);
    const std::size_t samples = n * raw.channels;
    auto sample = [&](std::size_t s) -> std::uint8_t {
        if (raw.bit_depth == 8) return pixels[s];
        std::uint16_t v;
        std::memcpy(&v, pixels.data() + 2 * s, sizeof v);
        return narrow16(v);
    };
    if (raw.channels == 3) {
        for (std::size_t s = 0; s < samples; ++s) rgb[s] = sample(s);
    } else {
        for (std::size_t p = 0; p < n; ++p) {
            const auto v = sample(p);
            rgb[3 * p] = rgb[3 * p + 1] = rgb[3 * p + 2] = v;
        }
    }
    return RgbImage(static_cast<int>(raw.width), static_cast<int>(raw.height), std::move(rgb));
}

// ---------------------------------------------------------------------------
// JPEG

struct JpegError {
    jpeg_error_mgr mgr;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_on_error(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegError*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

void jpeg_silent(j_common_ptr, int) {}

bool jpeg_decode_raw(std::span<const std::uint8_t> bytes, std::vector<std::uint8_t>& out,
                     int& width, int& height, int& precision, JpegError& err) {
    jpeg_decompress_struct cinfo;
    cinfo.err = jpeg_std_error(&err.mgr);
    err.mgr.error_exit = jpeg_on_error;
    err.mgr.emit_message = jpeg_silent;
    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        return false;
    }
    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    precision = cinfo.data_precision;
    if (precision != 8) {
        jpeg_destroy_decompress(&cinfo);
        return true;
    }
    if (cinfo.jpeg_color_space == JCS_CMYK || cinfo.jpeg_color_space == JCS_YCCK) {
        std::snprintf(err.message, sizeof err.message, "CMYK JPEG is not supported");
        jpeg_destroy_decompress(&cinfo);
        return false;
    }
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);
    width = static_cast<int>(cinfo.output_width);
    height = static_cast<int>(cinfo.output_height);
    const std::size_t stride = static_cast<std::size_t>(width) * kChannels;
    out.assign(stride * height, 0);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = out.data() + stride * cinfo.output_scanline;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return true;
}

RgbImage decode_jpeg(std::span<const std::uint8_t> bytes) {
    std::vector<std::uint8_t> rgb;
    int width = 0, height = 0, precision = 8;
    JpegError err{};
    if (!jpeg_decode_raw(bytes, rgb, width, height, precision, err)) {
        throw DecodeError(std::string("JPEG decode failed: ") + err.message);
    }
    if (precision != 8) {
        throw UnsupportedDepth("unsupported JPEG sample precision " + std::to_string(precision));
    }
    return RgbImage(width, height, std::move(rgb));
}

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

void png_write_to_vector(png_structp png, png_bytep data, png_size_t length) {
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + length);
}

void png_flush_noop(png_structp) {}

bool png_encode_raw(const RgbImage& img, std::vector<std::uint8_t>& out, PngErrorState& err) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &err, png_on_error, png_on_warning);
    if (!png) return false;
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        return false;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        return false;
    }
    png_set_write_fn(png, &out, png_write_to_vector, png_flush_noop);
    png_set_IHDR(png, info, img.width(), img.height(), 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    const std::size_t stride = static_cast<std::size_t>(img.width()) * kChannels;
    auto* base = const_cast<std::uint8_t*>(img.data().data());
    for (int y = 0; y < img.height(); ++y) png_write_row(png, base + stride * y);
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return true;
}

}  // namespace

RgbImage decode_image(std::span<const std::uint8_t> bytes) {
    if (bytes.size() >= 8 && std::equal(std::begin(kPngSignature), std::end(kPngSignature), bytes.begin())) {
        return decode_png(bytes);
    }
    if (bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF) {
        return decode_jpeg(bytes);
    }
    throw DecodeError("unrecognized image format (expected PNG or JPEG)");
}

RgbImage read_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_image(bytes);
}

std::vector<std::uint8_t> encode_png(const RgbImage& img) {
    if (img.empty()) throw ShapeMismatch("cannot encode an empty image");
    std::vector<std::uint8_t> out;
    PngErrorState err;
    if (!png_encode_raw(img, out, err)) {
        throw IoError(std::string("PNG encode failed: ") + err.message);
    }
    return out;
}

void write_png(const RgbImage& img, const std::filesystem::path& path) {
    const auto bytes = encode_png(img);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to " + path.string());
}

// ---------------------------------------------------------------------------
// Kernels. Serial counterparts live in reference.cpp.

ChannelHistogram channel_histogram(const RgbImage& img, int ch) {
    if (ch < 0 || ch >= kChannels) throw InvalidRange("channel index must be 0, 1 or 2");
    std::array<std::uint64_t, kLevels> counts{};
    const auto data = img.data();
    const auto n = static_cast<std::ptrdiff_t>(img.pixel_count());
    const std::uint8_t* base = data.data();

#pragma omp parallel
    {
        std::array<std::uint64_t, kLevels> local{};
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t p = 0; p < n; ++p) ++local[base[p * kChannels + ch]];
#pragma omp critical(segment_histogram_merge)
        for (int i = 0; i < kLevels; ++i) counts[i] += local[i];
    }
    return ChannelHistogram::from_counts(counts);
}

std::array<std::uint8_t, kLevels> class_lookup(const ThresholdSet& t,
                                               std::span<const std::uint8_t> values) {
    if (values.size() != t.class_count()) {
        throw ShapeMismatch("expected " + std::to_string(t.class_count()) + " class values, got " +
                            std::to_string(values.size()));
    }
    std::array<std::uint8_t, kLevels> lut{};
    for (std::size_t k = 0; k < t.class_count(); ++k) {
        for (int i = t.class_lo(k); i < t.class_hi(k); ++i) lut[i] = values[k];
    }
    return lut;
}

RgbImage apply_thresholds(const RgbImage& img, const ChannelThresholds& thresholds,
                          const ClassValues& class_values) {
    std::array<std::array<std::uint8_t, kLevels>, kChannels> luts;
    for (int ch = 0; ch < kChannels; ++ch) luts[ch] = class_lookup(thresholds[ch], class_values[ch]);

    RgbImage out(img.width(), img.height());
    const std::uint8_t* src = img.data().data();
    std::uint8_t* dst = out.data().data();
    const auto n = static_cast<std::ptrdiff_t>(img.pixel_count());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < n; ++p) {
        for (int ch = 0; ch < kChannels; ++ch) {
            dst[p * kChannels + ch] = luts[ch][src[p * kChannels + ch]];
        }
    }
    return out;
}

}  // namespace segment
