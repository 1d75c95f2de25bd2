#include "pipeserve/params.hpp"

#include <cstring>

namespace pipeserve {

namespace {

constexpr uint8_t kVersion = 1;

class Writer {
public:
    void u8(uint8_t v) { buf_.push_back(v); }
    void u32(uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    void i32(int32_t v) { u32(static_cast<uint32_t>(v)); }
    void f32(float v) {
        uint32_t bits;
        std::memcpy(&bits, &v, 4);
        u32(bits);
    }
    void bytes(const void* p, size_t n) {
        const auto* b = static_cast<const uint8_t*>(p);
        buf_.insert(buf_.end(), b, b + n);
    }
    void str(std::string_view s) {
        u32(static_cast<uint32_t>(s.size()));
        bytes(s.data(), s.size());
    }
    std::vector<uint8_t> take() { return std::move(buf_); }

private:
    std::vector<uint8_t> buf_;
};

class Reader {
public:
    explicit Reader(std::span<const uint8_t> b) : buf_(b) {}

    uint8_t u8() {
        need(1);
        return buf_[pos_++];
    }
    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= uint32_t(buf_[pos_ + i]) << (8 * i);
        pos_ += 4;
        return v;
    }
    int32_t i32() { return static_cast<int32_t>(u32()); }
    float f32() {
        uint32_t bits = u32();
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }
    std::string str() {
        uint32_t n = u32();
        need(n);
        std::string s(reinterpret_cast<const char*>(buf_.data() + pos_), n);
        pos_ += n;
        return s;
    }
    void f32_array(std::vector<float>& out, size_t n) {
        need(n * 4);
        out.resize(n);
        for (size_t i = 0; i < n; ++i) out[i] = f32_fast(pos_ + i * 4);
        pos_ += n * 4;
    }
    bool done() const { return pos_ == buf_.size(); }
    size_t remaining() const { return buf_.size() - pos_; }

private:
    float f32_fast(size_t at) const {
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= uint32_t(buf_[at + i]) << (8 * i);
        float f;
        std::memcpy(&f, &v, 4);
        return f;
    }
    void need(size_t n) const {
        if (buf_.size() - pos_ < n) throw StoreError("truncated parameter payload");
    }
    std::span<const uint8_t> buf_;
    size_t pos_ = 0;
};

void check(bool ok, const char* msg) {
    if (!ok) throw StoreError(msg);
}

}  // namespace

const char* param_type_name(ParamType t) {
    switch (t) {
        case ParamType::Dictionary: return "dictionary";
        case ParamType::LinearWeights: return "linear_weights";
        case ParamType::Centroids: return "centroids";
        case ParamType::PcaBasis: return "pca_basis";
        case ParamType::Trees: return "trees";
        case ParamType::TokenRules: return "token_rules";
        case ParamType::CsvConfig: return "csv_config";
        case ParamType::SelectConfig: return "select_config";
        case ParamType::StageLayout: return "stage_layout";
    }
    return "?";
}

ParamType param_type(const ParamValue& v) {
    return static_cast<ParamType>(v.index() + 1);
}

ParamType peek_param_type(std::span<const uint8_t> bytes) {
    check(bytes.size() >= 2, "parameter payload too short");
    uint8_t t = bytes[0];
    check(t >= 1 && t <= 9, "unknown parameter payload type");
    check(bytes[1] == kVersion, "unsupported parameter payload version");
    return static_cast<ParamType>(t);
}

std::vector<uint8_t> encode_param(const ParamValue& v) {
    Writer w;
    w.u8(static_cast<uint8_t>(param_type(v)));
    w.u8(kVersion);
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, DictionaryParam>) {
                w.u8(static_cast<uint8_t>(p.mode));
                w.u8(p.n);
                w.u32(static_cast<uint32_t>(p.terms.size()));
                for (const auto& t : p.terms) w.str(t);
            } else if constexpr (std::is_same_v<T, LinearParam>) {
                w.f32(p.bias);
                w.u32(static_cast<uint32_t>(p.weights.size()));
                for (float f : p.weights) w.f32(f);
            } else if constexpr (std::is_same_v<T, CentroidsParam>) {
                w.u32(p.k);
                w.u32(p.dim);
                for (float f : p.data) w.f32(f);
            } else if constexpr (std::is_same_v<T, PcaParam>) {
                w.u32(p.out_dim);
                w.u32(p.in_dim);
                for (float f : p.mean) w.f32(f);
                for (float f : p.rows) w.f32(f);
            } else if constexpr (std::is_same_v<T, TreesParam>) {
                w.u8(static_cast<uint8_t>(p.aggregate));
                w.u32(static_cast<uint32_t>(p.trees.size()));
                for (const auto& t : p.trees) {
                    w.u32(static_cast<uint32_t>(t.size()));
                    for (const auto& n : t) {
                        w.i32(n.feature);
                        w.f32(n.value);
                        w.u32(n.left);
                        w.u32(n.right);
                    }
                }
            } else if constexpr (std::is_same_v<T, TokenRulesParam>) {
                w.u8(static_cast<uint8_t>(p.mode));
            } else if constexpr (std::is_same_v<T, CsvConfigParam>) {
                w.u8(static_cast<uint8_t>(p.separator));
                w.u32(static_cast<uint32_t>(p.columns.size()));
                for (const auto& c : p.columns) {
                    w.str(c.name);
                    w.u8(static_cast<uint8_t>(c.dtype.kind));
                    w.u8(static_cast<uint8_t>(c.dtype.density));
                    w.u32(c.dtype.max_length);
                }
            } else if constexpr (std::is_same_v<T, SelectConfigParam>) {
                w.str(p.column);
            } else if constexpr (std::is_same_v<T, StageLayoutParam>) {
                w.u32(static_cast<uint32_t>(p.transforms.size()));
                for (const auto& t : p.transforms) {
                    w.str(t.kernel_key);
                    w.u8(static_cast<uint8_t>(t.kind));
                    w.u32(static_cast<uint32_t>(t.input_slots.size()));
                    for (int32_t s : t.input_slots) w.i32(s);
                    w.u32(t.output_capacity);
                    w.u8(static_cast<uint8_t>(t.output_type.kind));
                    w.u8(static_cast<uint8_t>(t.output_type.density));
                    w.u32(t.output_type.max_length);
                    w.u32(t.field_index);
                    w.u8(t.separator);
                    w.u32(t.ngram_n);
                    w.u32(t.slice_offset);
                    w.u32(t.slice_length);
                    w.u32(static_cast<uint32_t>(t.concat_offsets.size()));
                    for (uint32_t o : t.concat_offsets) w.u32(o);
                    w.u32(static_cast<uint32_t>(t.param_refs.size()));
                    for (const auto& c : t.param_refs) w.bytes(c.bytes.data(), c.bytes.size());
                }
                w.u32(static_cast<uint32_t>(p.output_positions.size()));
                for (uint32_t o : p.output_positions) w.u32(o);
                w.u32(p.external_inputs);
            }
        },
        v);
    return w.take();
}

ParamValue decode_param(std::span<const uint8_t> bytes) {
    ParamType type = peek_param_type(bytes);
    Reader r(bytes.subspan(2));
    switch (type) {
        case ParamType::Dictionary: {
            DictionaryParam p;
            uint8_t mode = r.u8();
            check(mode <= 1, "bad ngram mode");
            p.mode = static_cast<NgramMode>(mode);
            p.n = r.u8();
            check(p.n >= 1, "ngram n must be >= 1");
            uint32_t count = r.u32();
            p.terms.reserve(count);
            p.index.reserve(count);
            for (uint32_t i = 0; i < count; ++i) {
                p.terms.push_back(r.str());
                auto [it, fresh] = p.index.emplace(p.terms.back(), i);
                check(fresh, "duplicate dictionary term");
                (void)it;
            }
            check(r.done(), "trailing bytes in dictionary payload");
            return p;
        }
        case ParamType::LinearWeights: {
            LinearParam p;
            p.bias = r.f32();
            uint32_t n = r.u32();
            check(r.remaining() == size_t(n) * 4, "linear weights length mismatch");
            r.f32_array(p.weights, n);
            return p;
        }
        case ParamType::Centroids: {
            CentroidsParam p;
            p.k = r.u32();
            p.dim = r.u32();
            check(p.k > 0 && p.dim > 0, "empty centroids");
            check(r.remaining() == size_t(p.k) * p.dim * 4, "centroid data length mismatch");
            r.f32_array(p.data, size_t(p.k) * p.dim);
            p.norms2.resize(p.k);
            for (uint32_t i = 0; i < p.k; ++i) {
                double s = 0;
                const float* c = p.centroid(i);
                for (uint32_t j = 0; j < p.dim; ++j) s += double(c[j]) * c[j];
                p.norms2[i] = static_cast<float>(s);
            }
            return p;
        }
        case ParamType::PcaBasis: {
            PcaParam p;
            p.out_dim = r.u32();
            p.in_dim = r.u32();
            check(p.out_dim > 0 && p.in_dim > 0, "empty pca basis");
            check(r.remaining() == (size_t(p.in_dim) + size_t(p.out_dim) * p.in_dim) * 4,
                  "pca data length mismatch");
            r.f32_array(p.mean, p.in_dim);
            r.f32_array(p.rows, size_t(p.out_dim) * p.in_dim);
            p.rows_dot_mean.resize(p.out_dim);
            for (uint32_t i = 0; i < p.out_dim; ++i) {
                double s = 0;
                const float* row = p.row(i);
                for (uint32_t j = 0; j < p.in_dim; ++j) s += double(row[j]) * double(p.mean[j]);
                p.rows_dot_mean[i] = s;
            }
            return p;
        }
        case ParamType::Trees: {
            TreesParam p;
            uint8_t agg = r.u8();
            check(agg <= 1, "bad tree aggregate");
            p.aggregate = static_cast<TreeAggregate>(agg);
            uint32_t count = r.u32();
            check(count > 0, "empty tree ensemble");
            p.trees.resize(count);
            for (auto& t : p.trees) {
                uint32_t nodes = r.u32();
                check(nodes > 0, "empty tree");
                t.resize(nodes);
                for (auto& n : t) {
                    n.feature = r.i32();
                    n.value = r.f32();
                    n.left = r.u32();
                    n.right = r.u32();
                    check(n.feature >= -1, "bad tree feature index");
                    if (n.feature >= 0) {
                        check(n.left < nodes && n.right < nodes, "tree child out of range");
                    }
                }
            }
            check(r.done(), "trailing bytes in trees payload");
            return p;
        }
        case ParamType::TokenRules: {
            TokenRulesParam p;
            uint8_t mode = r.u8();
            check(mode == 0, "bad tokenize mode");
            p.mode = static_cast<TokenizeMode>(mode);
            check(r.done(), "trailing bytes in token rules payload");
            return p;
        }
        case ParamType::CsvConfig: {
            CsvConfigParam p;
            p.separator = static_cast<char>(r.u8());
            uint32_t n = r.u32();
            check(n > 0, "csv config needs at least one column");
            for (uint32_t i = 0; i < n; ++i) {
                Column c;
                c.name = r.str();
                uint8_t kind = r.u8();
                check(kind <= 3, "bad column dtype kind");
                c.dtype.kind = static_cast<DTypeKind>(kind);
                c.dtype.density = static_cast<Density>(r.u8() & 1);
                c.dtype.max_length = r.u32();
                p.columns.push_back(std::move(c));
            }
            check(r.done(), "trailing bytes in csv config payload");
            return p;
        }
        case ParamType::SelectConfig: {
            SelectConfigParam p;
            p.column = r.str();
            check(r.done(), "trailing bytes in select config payload");
            return p;
        }
        case ParamType::StageLayout: {
            StageLayoutParam p;
            uint32_t nt = r.u32();
            p.transforms.resize(nt);
            for (auto& t : p.transforms) {
                t.kernel_key = r.str();
                t.kind = static_cast<TransformKind>(r.u8());
                uint32_t ni = r.u32();
                t.input_slots.resize(ni);
                for (auto& s : t.input_slots) s = r.i32();
                t.output_capacity = r.u32();
                t.output_type.kind = static_cast<DTypeKind>(r.u8());
                t.output_type.density = static_cast<Density>(r.u8() & 1);
                t.output_type.max_length = r.u32();
                t.field_index = r.u32();
                t.separator = r.u8();
                t.ngram_n = r.u32();
                t.slice_offset = r.u32();
                t.slice_length = r.u32();
                uint32_t no = r.u32();
                t.concat_offsets.resize(no);
                for (auto& o : t.concat_offsets) o = r.u32();
                uint32_t np = r.u32();
                t.param_refs.resize(np);
                for (auto& c : t.param_refs) {
                    for (auto& b : c.bytes) b = r.u8();
                }
            }
            uint32_t nout = r.u32();
            p.output_positions.resize(nout);
            for (auto& o : p.output_positions) o = r.u32();
            p.external_inputs = r.u32();
            check(r.done(), "trailing bytes in stage layout payload");
            return p;
        }
    }
    throw StoreError("unknown parameter payload type");
}

}  // namespace pipeserve
