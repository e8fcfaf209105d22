#include "roicomp/jpegls.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

namespace roicomp {

namespace {

// Marker codes
constexpr std::uint8_t kSOI = 0xD8;
constexpr std::uint8_t kEOI = 0xD9;
constexpr std::uint8_t kSOF55 = 0xF7;
constexpr std::uint8_t kLSE = 0xF8;
constexpr std::uint8_t kSOS = 0xDA;

// Run-length code order (T.87 table A.7)
constexpr int kJ[32] = {0, 0, 0, 0, 1, 1, 1, 1, 2,  2,  2,  2,  3,  3,  3,  3,
                        4, 4, 5, 5, 6, 6, 7, 7, 8,  9,  10, 11, 12, 13, 14, 15};

constexpr int kMinC = -128;
constexpr int kMaxC = 127;

int ceil_log2(int x) {
    int bits = 0;
    while ((1 << bits) < x) ++bits;
    return bits;
}

// Derived coding constants plus adaptive context state.
struct CoderState {
    // derived from params
    int maxval, range, qbpp, bpp, limit;
    int t1, t2, t3, reset;

    // regular-mode contexts, indexed by the sign-normalized quantized
    // gradient triple packed as (q1+4)*81 + (q2+4)*9 + (q3+4)
    std::array<int, 729> A{}, B{}, C{}, N{};

    // run-interruption contexts: [0] RItype 0, [1] RItype 1
    std::array<int, 2> Arun{}, Nrun{}, Nn{};

    int run_index = 0;

    explicit CoderState(const JpeglsParams& p)
        : maxval(p.maxval),
          range(p.maxval + 1),
          qbpp(ceil_log2(p.maxval + 1)),
          bpp(std::max(2, ceil_log2(p.maxval + 1))),
          limit(2 * (std::max(2, ceil_log2(p.maxval + 1)) +
                     std::max(8, std::max(2, ceil_log2(p.maxval + 1))))),
          t1(p.t1),
          t2(p.t2),
          t3(p.t3),
          reset(p.reset) {
        const int a_init = std::max(2, (range + 32) >> 6);
        A.fill(a_init);
        N.fill(1);
        Arun = {a_init, a_init};
        Nrun = {1, 1};
        Nn = {0, 0};
    }

    int quantize(int d) const {
        if (d <= -t3) return -4;
        if (d <= -t2) return -3;
        if (d <= -t1) return -2;
        if (d < 0) return -1;
        if (d == 0) return 0;
        if (d < t1) return 1;
        if (d < t2) return 2;
        if (d < t3) return 3;
        return 4;
    }

    // Maps the quantized triple to a context index; sign_out gets +1/-1.
    int context_index(int d1, int d2, int d3, int& sign_out) const {
        int q1 = quantize(d1);
        int q2 = quantize(d2);
        int q3 = quantize(d3);
        if (q1 < 0 || (q1 == 0 && (q2 < 0 || (q2 == 0 && q3 < 0)))) {
            sign_out = -1;
            q1 = -q1;
            q2 = -q2;
            q3 = -q3;
        } else {
            sign_out = 1;
        }
        return (q1 + 4) * 81 + (q2 + 4) * 9 + (q3 + 4);
    }

    int golomb_k(int n, int a) const {
        int k = 0;
        while ((n << k) < a) ++k;
        return k;
    }

    int mod_range(int err) const {
        if (err < 0) err += range;
        if (err >= (range + 1) / 2) err -= range;
        return err;
    }

    // A.6.1 + A.6.2: accumulator update and bias cancellation.
    void update_regular(int q, int err) {
        B[q] += err;
        A[q] += std::abs(err);
        if (N[q] == reset) {
            A[q] >>= 1;
            B[q] >>= 1;  // arithmetic shift
            N[q] >>= 1;
        }
        ++N[q];
        if (B[q] <= -N[q]) {
            B[q] += N[q];
            if (C[q] > kMinC) --C[q];
            if (B[q] <= -N[q]) B[q] = -N[q] + 1;
        } else if (B[q] > 0) {
            B[q] -= N[q];
            if (C[q] < kMaxC) ++C[q];
            if (B[q] > 0) B[q] = 0;
        }
    }

    void update_run(int ritype, int err, int emerr) {
        if (err < 0) ++Nn[ritype];
        Arun[ritype] += (emerr + 1 - ritype) >> 1;
        if (Nrun[ritype] == reset) {
            Arun[ritype] >>= 1;
            Nrun[ritype] >>= 1;
            Nn[ritype] >>= 1;
        }
        ++Nrun[ritype];
    }
};

// --- bit I/O with T.87 stuffing: a byte following 0xFF carries 7 bits ---

class BitWriter {
public:
    explicit BitWriter(std::vector<std::uint8_t>& out) : out_(out) {}

    void put_bit(int bit) {
        cur_ = (cur_ << 1) | (bit & 1);
        if (++nbits_ == width_) emit();
    }

    void put_bits(std::uint32_t value, int count) {
        for (int i = count - 1; i >= 0; --i) put_bit((value >> i) & 1);
    }

    void put_zeros(int count) {
        for (int i = 0; i < count; ++i) put_bit(0);
    }

    void flush() {
        if (nbits_ > 0) {
            cur_ <<= (width_ - nbits_);  // zero padding
            emit();
        }
    }

private:
    void emit() {
        out_.push_back(cur_);
        width_ = (cur_ == 0xFF) ? 7 : 8;
        cur_ = 0;
        nbits_ = 0;
    }

    std::vector<std::uint8_t>& out_;
    std::uint8_t cur_ = 0;
    int nbits_ = 0;
    int width_ = 8;
};

class BitReader {
public:
    BitReader(std::span<const std::uint8_t> data, std::size_t start)
        : data_(data), pos_(start) {}

    int read_bit() {
        if (nbits_ == 0 && !load_byte()) return 0;  // past end: zero fill
        --nbits_;
        return (cur_ >> nbits_) & 1;
    }

    std::uint32_t read_bits(int count) {
        std::uint32_t v = 0;
        for (int i = 0; i < count; ++i) v = (v << 1) | static_cast<std::uint32_t>(read_bit());
        return v;
    }

    /// Position of the first unconsumed byte (partial bytes count as consumed).
    std::size_t byte_position() const { return pos_; }

private:
    bool load_byte() {
        if (pos_ >= data_.size()) return false;
        const std::uint8_t b = data_[pos_];
        if (prev_ff_) {
            if (b & 0x80) return false;  // marker reached, not data
            ++pos_;
            cur_ = b;
            nbits_ = 7;
            prev_ff_ = false;
        } else {
            ++pos_;
            cur_ = b;
            nbits_ = 8;
            prev_ff_ = (b == 0xFF);
        }
        return true;
    }

    std::span<const std::uint8_t> data_;
    std::size_t pos_;
    std::uint8_t cur_ = 0;
    int nbits_ = 0;
    bool prev_ff_ = false;
};

// --- shared coding helpers ---

void encode_limited(BitWriter& bw, const CoderState& st, int value, int k, int glimit) {
    const int unary = value >> k;
    if (unary < glimit - st.qbpp - 1) {
        bw.put_zeros(unary);
        bw.put_bit(1);
        if (k > 0) bw.put_bits(static_cast<std::uint32_t>(value), k);
    } else {
        bw.put_zeros(glimit - st.qbpp - 1);
        bw.put_bit(1);
        bw.put_bits(static_cast<std::uint32_t>(value - 1), st.qbpp);
    }
}

int decode_limited(BitReader& br, const CoderState& st, int k, int glimit) {
    const int cap = glimit - st.qbpp - 1;
    int unary = 0;
    while (br.read_bit() == 0) {
        if (++unary > cap)
            throw JlsError(JlsError::Kind::corrupt_data,
                           "jpegls: unary prefix exceeds the coding limit");
    }
    if (unary < cap) {
        int v = unary << k;
        if (k > 0) v |= static_cast<int>(br.read_bits(k));
        return v;
    }
    return static_cast<int>(br.read_bits(st.qbpp)) + 1;
}

void validate_params(const JpeglsParams& p) {
    if (p.near != 0)
        throw JlsError(JlsError::Kind::unsupported, "jpegls: only lossless (near=0) is supported");
    if (p.maxval < 1 || p.maxval > 255)
        throw JlsError(JlsError::Kind::unsupported, "jpegls: maxval must be in [1,255]");
    if (p.t1 < 1 || p.t1 > p.t2 || p.t2 > p.t3 || p.t3 > p.maxval)
        throw JlsError(JlsError::Kind::unsupported, "jpegls: invalid thresholds");
    if (p.reset < 3 || p.reset > p.maxval)
        throw JlsError(JlsError::Kind::unsupported, "jpegls: invalid reset interval");
}

// --- scan codecs ---

void encode_scan(BitWriter& bw, CoderState& st, const GrayImage& image) {
    const int w = image.width();
    const int h = image.height();
    // lines are padded: slot 0 is x=-1, slot w+1 is x=w
    std::vector<int> prev(static_cast<std::size_t>(w) + 2, 0);
    std::vector<int> cur(static_cast<std::size_t>(w) + 2, 0);

    for (int y = 0; y < h; ++y) {
        cur[0] = prev[1];       // Ra substitute for x=0
        prev[w + 1] = prev[w];  // Rd substitute for x=w-1
        const std::uint8_t* line = image.row(y);

        int x = 0;
        while (x < w) {
            const int ra = cur[x];
            const int rb = prev[x + 1];
            const int rc = prev[x];
            const int rd = prev[x + 2];
            const int d1 = rd - rb;
            const int d2 = rb - rc;
            const int d3 = rc - ra;

            if (d1 == 0 && d2 == 0 && d3 == 0) {
                // run mode
                const int runval = ra;
                int runcnt = 0;
                while (x + runcnt < w && line[x + runcnt] == runval) {
                    cur[x + runcnt + 1] = runval;
                    ++runcnt;
                }
                const bool eol = (x + runcnt == w);
                int rem = runcnt;
                while (rem >= (1 << kJ[st.run_index])) {
                    bw.put_bit(1);
                    rem -= 1 << kJ[st.run_index];
                    if (st.run_index < 31) ++st.run_index;
                }
                if (eol) {
                    if (rem > 0) bw.put_bit(1);
                    x += runcnt;
                    continue;
                }
                bw.put_bit(0);
                if (kJ[st.run_index] > 0)
                    bw.put_bits(static_cast<std::uint32_t>(rem), kJ[st.run_index]);
                x += runcnt;

                // run interruption sample
                const int ix = line[x];
                const int rb_i = prev[x + 1];
                const int ritype = (runval == rb_i) ? 1 : 0;
                int err = ix - (ritype ? runval : rb_i);
                if (!ritype && runval > rb_i) err = -err;
                err = st.mod_range(err);

                const int temp = ritype ? st.Arun[1] + (st.Nrun[1] >> 1) : st.Arun[0];
                const int k = st.golomb_k(st.Nrun[ritype], temp);
                int map;
                if (k == 0 && err > 0 && 2 * st.Nn[ritype] < st.Nrun[ritype])
                    map = 1;
                else if (err < 0 && 2 * st.Nn[ritype] >= st.Nrun[ritype])
                    map = 1;
                else if (err < 0 && k != 0)
                    map = 1;
                else
                    map = 0;
                const int emerr = 2 * std::abs(err) - ritype - map;
                encode_limited(bw, st, emerr, k, st.limit - kJ[st.run_index] - 1);
                st.update_run(ritype, err, emerr);
                if (st.run_index > 0) --st.run_index;

                cur[x + 1] = ix;
                ++x;
                continue;
            }

            // regular mode
            const int ix = line[x];
            int sign;
            const int q = st.context_index(d1, d2, d3, sign);
            int px = predict_med(ra, rb, rc);
            px += sign * st.C[q];
            px = std::clamp(px, 0, st.maxval);

            int err = ix - px;
            if (sign < 0) err = -err;
            err = st.mod_range(err);

            const int k = st.golomb_k(st.N[q], st.A[q]);
            int merr;
            if (k == 0 && 2 * st.B[q] <= -st.N[q])
                merr = (err >= 0) ? 2 * err + 1 : -2 * (err + 1);
            else
                merr = (err >= 0) ? 2 * err : -2 * err - 1;
            encode_limited(bw, st, merr, k, st.limit);
            st.update_regular(q, err);

            cur[x + 1] = ix;
            ++x;
        }
        std::swap(prev, cur);
    }
}

void decode_scan(BitReader& br, CoderState& st, GrayImage& image) {
    const int w = image.width();
    const int h = image.height();
    std::vector<int> prev(static_cast<std::size_t>(w) + 2, 0);
    std::vector<int> cur(static_cast<std::size_t>(w) + 2, 0);

    auto wrap = [&](int v) {
        if (v < 0) v += st.range;
        else if (v > st.maxval) v -= st.range;
        return std::clamp(v, 0, st.maxval);
    };

    for (int y = 0; y < h; ++y) {
        cur[0] = prev[1];
        prev[w + 1] = prev[w];
        std::uint8_t* line = image.row(y);

        int x = 0;
        while (x < w) {
            const int ra = cur[x];
            const int rb = prev[x + 1];
            const int rc = prev[x];
            const int rd = prev[x + 2];
            const int d1 = rd - rb;
            const int d2 = rb - rc;
            const int d3 = rc - ra;

            if (d1 == 0 && d2 == 0 && d3 == 0) {
                // run mode
                const int runval = ra;
                const int remaining = w - x;
                int count = 0;
                while (br.read_bit() == 1) {
                    const int full = 1 << kJ[st.run_index];
                    const int take = std::min(full, remaining - count);
                    count += take;
                    if (take == full && st.run_index < 31) ++st.run_index;
                    if (count == remaining) break;
                }
                const bool eol = (count == remaining);
                if (!eol && kJ[st.run_index] > 0) {
                    count += static_cast<int>(br.read_bits(kJ[st.run_index]));
                    // an interrupted run never fills the line
                    if (count >= remaining)
                        throw JlsError(JlsError::Kind::corrupt_data,
                                       "jpegls: run length exceeds the line");
                }
                for (int i = 0; i < count; ++i) {
                    line[x + i] = static_cast<std::uint8_t>(runval);
                    cur[x + i + 1] = runval;
                }
                x += count;
                if (eol) continue;

                // run interruption sample
                const int rb_i = prev[x + 1];
                const int ritype = (runval == rb_i) ? 1 : 0;
                const int temp = ritype ? st.Arun[1] + (st.Nrun[1] >> 1) : st.Arun[0];
                const int k = st.golomb_k(st.Nrun[ritype], temp);
                const int emerr = decode_limited(br, st, k, st.limit - kJ[st.run_index] - 1);

                const int mapped = emerr + ritype;
                const int map = mapped & 1;
                const int errabs = (mapped + map) / 2;
                const bool negate = ((k != 0 || 2 * st.Nn[ritype] >= st.Nrun[ritype]) ==
                                     (map != 0));
                const int err = negate ? -errabs : errabs;
                st.update_run(ritype, err, emerr);
                if (st.run_index > 0) --st.run_index;

                int rx;
                if (ritype)
                    rx = wrap(runval + err);
                else
                    rx = wrap(rb_i + (runval > rb_i ? -err : err));
                line[x] = static_cast<std::uint8_t>(rx);
                cur[x + 1] = rx;
                ++x;
                continue;
            }

            // regular mode
            int sign;
            const int q = st.context_index(d1, d2, d3, sign);
            int px = predict_med(ra, rb, rc);
            px += sign * st.C[q];
            px = std::clamp(px, 0, st.maxval);

            const int k = st.golomb_k(st.N[q], st.A[q]);
            const int merr = decode_limited(br, st, k, st.limit);
            int err;
            if (k == 0 && 2 * st.B[q] <= -st.N[q])
                err = (merr & 1) ? (merr - 1) / 2 : -(merr / 2) - 1;
            else
                err = (merr & 1) ? -((merr + 1) / 2) : merr / 2;
            st.update_regular(q, err);
            if (sign < 0) err = -err;

            const int rx = wrap(px + err);
            line[x] = static_cast<std::uint8_t>(rx);
            cur[x + 1] = rx;
            ++x;
        }
        std::swap(prev, cur);
    }
}

// --- marker plumbing ---

void put_u16(std::vector<std::uint8_t>& out, int v) {
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

struct StreamCursor {
    std::span<const std::uint8_t> data;
    std::size_t pos = 0;

    std::uint8_t u8(const char* what) {
        if (pos >= data.size())
            throw JlsError(JlsError::Kind::bad_marker,
                           std::string("jpegls: truncated stream while reading ") + what);
        return data[pos++];
    }
    int u16(const char* what) {
        const int hi = u8(what);
        const int lo = u8(what);
        return (hi << 8) | lo;
    }
};

}  // namespace

int predict_med(int a, int b, int c) {
    if (c >= std::max(a, b)) return std::min(a, b);
    if (c <= std::min(a, b)) return std::max(a, b);
    return a + b - c;
}

int quantize_gradient(int d, const JpeglsParams& params) {
    return CoderState(params).quantize(d);
}

std::vector<std::uint8_t> jpegls_encode(const GrayImage& image, const JpeglsParams& params) {
    validate_params(params);
    if (image.width() > 0xFFFF || image.height() > 0xFFFF)
        throw JlsError(JlsError::Kind::unsupported, "jpegls: dimensions exceed 16-bit fields");

    std::vector<std::uint8_t> out;
    out.reserve(image.pixel_count() / 2 + 64);

    out.push_back(0xFF);
    out.push_back(kSOI);

    out.push_back(0xFF);
    out.push_back(kSOF55);
    put_u16(out, 11);  // Lf = 8 + 3*Nf
    out.push_back(8);  // precision
    put_u16(out, image.height());
    put_u16(out, image.width());
    out.push_back(1);     // Nf
    out.push_back(1);     // component id
    out.push_back(0x11);  // sampling factors
    out.push_back(0);     // quantization table (unused)

    if (params != JpeglsParams{}) {
        out.push_back(0xFF);
        out.push_back(kLSE);
        put_u16(out, 13);  // Ll
        out.push_back(1);  // ID: coding parameters
        put_u16(out, params.maxval);
        put_u16(out, params.t1);
        put_u16(out, params.t2);
        put_u16(out, params.t3);
        put_u16(out, params.reset);
    }

    out.push_back(0xFF);
    out.push_back(kSOS);
    put_u16(out, 8);   // Ls = 6 + 2*Ns
    out.push_back(1);  // Ns
    out.push_back(1);  // component selector
    out.push_back(0);  // mapping table
    out.push_back(static_cast<std::uint8_t>(params.near));
    out.push_back(0);  // interleave mode
    out.push_back(0);  // point transform

    CoderState st(params);
    BitWriter bw(out);
    encode_scan(bw, st, image);
    bw.flush();

    out.push_back(0xFF);
    out.push_back(kEOI);
    return out;
}

GrayImage jpegls_decode(std::span<const std::uint8_t> stream) {
    StreamCursor c{stream};
    if (c.u8("SOI") != 0xFF || c.u8("SOI") != kSOI)
        throw JlsError(JlsError::Kind::bad_marker, "jpegls: stream does not start with SOI");

    JpeglsParams params;
    int width = -1;
    int height = -1;
    bool have_sof = false;

    for (;;) {
        if (c.u8("marker") != 0xFF)
            throw JlsError(JlsError::Kind::bad_marker, "jpegls: expected marker prefix 0xFF");
        std::uint8_t code = c.u8("marker code");
        while (code == 0xFF) code = c.u8("marker code");  // fill bytes

        if (code == kSOF55) {
            const int lf = c.u16("SOF length");
            const int precision = c.u8("precision");
            height = c.u16("height");
            width = c.u16("width");
            const int nf = c.u8("component count");
            if (lf != 8 + 3 * nf)
                throw JlsError(JlsError::Kind::bad_marker, "jpegls: bad SOF55 length");
            if (precision != 8)
                throw JlsError(JlsError::Kind::unsupported,
                               "jpegls: only 8-bit precision is supported");
            if (nf != 1)
                throw JlsError(JlsError::Kind::unsupported,
                               "jpegls: only single-component streams are supported");
            if (width < 1 || height < 1)
                throw JlsError(JlsError::Kind::unsupported,
                               "jpegls: dimensions must be declared in SOF55");
            if (static_cast<long long>(width) * height > (1LL << 28))
                throw JlsError(JlsError::Kind::dimension_overflow,
                               "jpegls: declared image is implausibly large");
            c.u8("component id");
            c.u8("sampling factors");
            c.u8("quantization table");
            have_sof = true;
        } else if (code == kLSE) {
            const int ll = c.u16("LSE length");
            const int id = c.u8("LSE id");
            if (id != 1)
                throw JlsError(JlsError::Kind::unsupported,
                               "jpegls: only LSE coding-parameter segments are supported");
            if (ll != 13)
                throw JlsError(JlsError::Kind::bad_marker, "jpegls: bad LSE length");
            params.maxval = c.u16("maxval");
            params.t1 = c.u16("t1");
            params.t2 = c.u16("t2");
            params.t3 = c.u16("t3");
            params.reset = c.u16("reset");
        } else if ((code >= 0xE0 && code <= 0xEF) || code == 0xFE) {
            // APPn / COM: skip payload
            const int len = c.u16("segment length");
            if (len < 2 || c.pos + static_cast<std::size_t>(len) - 2 > c.data.size())
                throw JlsError(JlsError::Kind::bad_marker, "jpegls: bad segment length");
            c.pos += static_cast<std::size_t>(len) - 2;
        } else if (code == kSOS) {
            if (!have_sof)
                throw JlsError(JlsError::Kind::bad_marker, "jpegls: SOS before SOF55");
            const int ls = c.u16("SOS length");
            const int ns = c.u8("scan components");
            if (ls != 6 + 2 * ns)
                throw JlsError(JlsError::Kind::bad_marker, "jpegls: bad SOS length");
            if (ns != 1)
                throw JlsError(JlsError::Kind::unsupported,
                               "jpegls: interleaved scans are not supported");
            c.u8("component selector");
            c.u8("mapping table");
            const int near = c.u8("near");
            const int ilv = c.u8("interleave mode");
            c.u8("point transform");
            if (near != 0)
                throw JlsError(JlsError::Kind::unsupported,
                               "jpegls: near-lossless streams are not supported");
            if (ilv != 0)
                throw JlsError(JlsError::Kind::unsupported,
                               "jpegls: interleave modes are not supported");
            break;
        } else if (code == kEOI) {
            throw JlsError(JlsError::Kind::bad_marker, "jpegls: EOI before any scan");
        } else {
            throw JlsError(JlsError::Kind::bad_marker, "jpegls: unexpected marker");
        }
    }

    validate_params(params);

    GrayImage image(width, height);
    CoderState st(params);
    BitReader br(stream, c.pos);
    decode_scan(br, st, image);

    std::size_t end = br.byte_position();
    if (end + 2 > stream.size() || stream[end] != 0xFF || stream[end + 1] != kEOI)
        throw JlsError(JlsError::Kind::bad_marker, "jpegls: missing EOI after entropy data");
    return image;
}

}  // namespace roicomp
