#include "pipeserve/kernels/registry.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstring>

#include "pipeserve/kernels/simd.hpp"

namespace pipeserve::kern {

const DataVector& StageExecCtx::input(const ResolvedTransform& t, size_t i) const {
    int32_t s = t.layout->input_slots[i];
    if (s >= 0) return chain_slots[s];
    return *external_inputs[~s];
}

namespace {

// ---------------------------------------------------------------------------
// text handling

bool is_boundary_ascii(unsigned char c) {
    if (c == ' ' || (c >= 0x09 && c <= 0x0d)) return true;
    return std::ispunct(c) != 0;
}

bool is_unicode_space(uint32_t cp) {
    switch (cp) {
        case 0x0085: case 0x00a0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202f: case 0x205f: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200a;
    }
}

// Decodes one UTF-8 sequence; invalid bytes are consumed one at a time and
// treated as token characters.
uint32_t next_codepoint(const char* s, size_t len, size_t& i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
        ++i;
        return c;
    }
    int extra = (c >= 0xf0) ? 3 : (c >= 0xe0) ? 2 : (c >= 0xc0) ? 1 : 0;
    if (extra == 0 || i + extra >= len) {
        ++i;
        return c;
    }
    uint32_t cp = c & (0x3f >> extra);
    for (int k = 1; k <= extra; ++k) {
        unsigned char cc = static_cast<unsigned char>(s[i + k]);
        if ((cc & 0xc0) != 0x80) {
            ++i;
            return c;
        }
        cp = (cp << 6) | (cc & 0x3f);
    }
    i += extra + 1;
    return cp;
}

struct FieldRef {
    const char* data;
    size_t len;
};

// Splits line on sep and returns field `index`. separator 0 means the whole
// line is the single field.
bool csv_field(std::string_view line, char sep, uint32_t index, FieldRef& out) {
    if (sep == 0) {
        if (index != 0) return false;
        out = {line.data(), line.size()};
        return true;
    }
    size_t start = 0;
    uint32_t field = 0;
    for (size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            if (field == index) {
                out = {line.data() + start, i - start};
                return true;
            }
            ++field;
            start = i + 1;
        }
    }
    return false;
}

bool parse_floats(const char* data, size_t len, char sep, uint32_t expected, float* out) {
    size_t start = 0;
    uint32_t n = 0;
    for (size_t i = 0; i <= len; ++i) {
        if (i == len || data[i] == sep) {
            if (n >= expected) return false;
            const char* b = data + start;
            const char* e = data + i;
            while (b < e && *b == ' ') ++b;
            auto [p, ec] = std::from_chars(b, e, out[n]);
            if (ec != std::errc() || p != e) return false;
            ++n;
            start = i + 1;
        }
    }
    return n == expected;
}

// ---------------------------------------------------------------------------
// kernels

void k_csv_parse(StageExecCtx& ctx, const ResolvedTransform& t) {
    const DataVector& rec = ctx.input(t, 0);
    DataVector& out = ctx.chain_slots[t.chain_pos];
    if (rec.kind != VecKind::Text) {
        ctx.fail(ExecStatus::SchemaError);
        return;
    }
    const auto& ty = t.layout->output_type;
    if (ty.kind == DTypeKind::Text) {
        out = DataVector::text_view(rec.as_text());
        out.buf = ctx.chain_slots[t.chain_pos].buf;  // keep any bound buffer for release accounting
        out.kind = VecKind::Text;
        return;
    }
    // Single dense column: the whole line is separator-delimited floats.
    if (!parse_floats(rec.text, rec.length, static_cast<char>(t.layout->separator), ty.max_length,
                      out.dense_data())) {
        ctx.fail(ExecStatus::SchemaError, 0);
        return;
    }
    out.kind = VecKind::Dense;
    out.length = ty.max_length;
}

void k_select(StageExecCtx& ctx, const ResolvedTransform& t) {
    const DataVector& in = ctx.input(t, 0);
    DataVector& out = ctx.chain_slots[t.chain_pos];
    if (in.kind != VecKind::Text) {
        ctx.fail(ExecStatus::SchemaError);
        return;
    }
    FieldRef field;
    if (!csv_field(in.as_text(), static_cast<char>(t.layout->separator), t.layout->field_index,
                   field)) {
        ctx.fail(ExecStatus::SchemaError, t.layout->field_index);
        return;
    }
    const auto& ty = t.layout->output_type;
    if (ty.kind == DTypeKind::Text) {
        PoolBuffer keep = out.buf;
        out = DataVector::text_view({field.data, field.len});
        out.buf = keep;
        return;
    }
    // Dense column inside one field: space-separated floats.
    if (!parse_floats(field.data, field.len, ' ', ty.max_length, out.dense_data())) {
        ctx.fail(ExecStatus::SchemaError, t.layout->field_index);
        return;
    }
    out.kind = VecKind::Dense;
    out.length = ty.max_length;
}

void k_tokenize(StageExecCtx& ctx, const ResolvedTransform& t) {
    const DataVector& in = ctx.input(t, 0);
    DataVector& out = ctx.chain_slots[t.chain_pos];
    if (in.kind != VecKind::Text) {
        ctx.fail(ExecStatus::SchemaError);
        return;
    }
    const char* s = in.text;
    size_t len = in.length;
    TokenSpan* toks = out.tokens();
    uint32_t cap = out.token_capacity();
    uint32_t count = 0;
    size_t i = 0;
    size_t tok_start = 0;
    bool in_tok = false;
    auto flush = [&](size_t end) {
        if (!in_tok) return true;
        if (count >= cap) return false;
        toks[count++] = {static_cast<uint32_t>(tok_start), static_cast<uint32_t>(end - tok_start)};
        in_tok = false;
        return true;
    };
    while (i < len) {
        size_t at = i;
        unsigned char c = static_cast<unsigned char>(s[i]);
        bool boundary;
        if (c < 0x80) {
            boundary = is_boundary_ascii(c);
            ++i;
        } else {
            boundary = is_unicode_space(next_codepoint(s, len, i));
        }
        if (boundary) {
            if (!flush(at)) {
                ctx.fail(ExecStatus::CapacityError);
                return;
            }
        } else if (!in_tok) {
            in_tok = true;
            tok_start = at;
        }
    }
    if (!flush(len)) {
        ctx.fail(ExecStatus::CapacityError);
        return;
    }
    out.kind = VecKind::Tokens;
    out.length = count;
    out.text = s;  // spans reference the input buffer
}

// Gathers matched dictionary indices into scratch, sorts, and run-length
// encodes into a sparse count vector.
void emit_counts(StageExecCtx& ctx, const ResolvedTransform& t, uint32_t* scratch, uint32_t n) {
    DataVector& out = ctx.chain_slots[t.chain_pos];
    std::sort(scratch, scratch + n);
    uint32_t* idx = out.sparse_idx();
    float* val = out.sparse_val();
    uint32_t cap = out.sparse_cap();
    uint32_t nnz = 0;
    uint32_t i = 0;
    while (i < n) {
        uint32_t j = i;
        while (j < n && scratch[j] == scratch[i]) ++j;
        if (nnz >= cap) {
            ctx.fail(ExecStatus::CapacityError);
            return;
        }
        idx[nnz] = scratch[i];
        val[nnz] = static_cast<float>(j - i);
        ++nnz;
        i = j;
    }
    out.kind = VecKind::Sparse;
    out.nnz = nnz;
    out.length = t.layout->output_type.max_length;
}

void k_char_ngram(StageExecCtx& ctx, const ResolvedTransform& t) {
    const DataVector& in = ctx.input(t, 0);
    if (in.kind != VecKind::Tokens) {
        ctx.fail(ExecStatus::SchemaError);
        return;
    }
    const DictionaryParam& dict = *t.dict;
    uint32_t n = t.layout->ngram_n;
    const char* text = in.text;
    // Gram count is bounded by the total token bytes.
    size_t max_grams = 1;
    for (uint32_t k = 0; k < in.length; ++k) max_grams += in.tokens()[k].length;
    uint32_t* scratch = ctx.arena->alloc_array<uint32_t>(max_grams);
    uint32_t found = 0;
    for (uint32_t k = 0; k < in.length; ++k) {
        TokenSpan tok = in.tokens()[k];
        if (tok.length < n) continue;
        for (uint32_t off = 0; off + n <= tok.length; ++off) {
            std::string_view gram(text + tok.offset + off, n);
            auto it = dict.index.find(gram);
            if (it != dict.index.end()) scratch[found++] = it->second;
        }
    }
    emit_counts(ctx, t, scratch, found);
}

void k_word_ngram(StageExecCtx& ctx, const ResolvedTransform& t) {
    const DataVector& in = ctx.input(t, 0);
    if (in.kind != VecKind::Tokens) {
        ctx.fail(ExecStatus::SchemaError);
        return;
    }
    const DictionaryParam& dict = *t.dict;
    uint32_t n = t.layout->ngram_n;
    const char* text = in.text;
    uint32_t count = in.length;
    uint32_t windows = count >= n ? count - n + 1 : 0;
    uint32_t* scratch = ctx.arena->alloc_array<uint32_t>(windows + 1);
    size_t key_cap = 0;
    for (uint32_t k = 0; k < count; ++k) key_cap += in.tokens()[k].length + 1;
    char* key = ctx.arena->alloc_array<char>(key_cap + 1);
    uint32_t found = 0;
    for (uint32_t w = 0; w < windows; ++w) {
        size_t klen = 0;
        for (uint32_t j = 0; j < n; ++j) {
            TokenSpan tok = in.tokens()[w + j];
            if (j) key[klen++] = '\x1e';
            std::memcpy(key + klen, text + tok.offset, tok.length);
            klen += tok.length;
        }
        auto it = dict.index.find(std::string_view(key, klen));
        if (it != dict.index.end()) scratch[found++] = it->second;
    }
    emit_counts(ctx, t, scratch, found);
}

void k_concat_dense(StageExecCtx& ctx, const ResolvedTransform& t) {
    DataVector& out = ctx.chain_slots[t.chain_pos];
    float* dst = out.dense_data();
    uint32_t off = 0;
    for (size_t i = 0; i < t.layout->input_slots.size(); ++i) {
        const DataVector& in = ctx.input(t, i);
        assert(in.kind == VecKind::Dense && off == t.layout->concat_offsets[i]);
        std::memcpy(dst + off, in.dense_data(), size_t(in.length) * 4);
        off += in.length;
    }
    out.kind = VecKind::Dense;
    out.length = off;
}

void k_concat_sparse(StageExecCtx& ctx, const ResolvedTransform& t) {
    DataVector& out = ctx.chain_slots[t.chain_pos];
    uint32_t* idx = out.sparse_idx();
    float* val = out.sparse_val();
    uint32_t cap = out.sparse_cap();
    uint32_t nnz = 0;
    for (size_t i = 0; i < t.layout->input_slots.size(); ++i) {
        const DataVector& in = ctx.input(t, i);
        uint32_t off = t.layout->concat_offsets[i];
        if (in.kind == VecKind::Dense) {
            for (uint32_t j = 0; j < in.length; ++j) {
                float v = in.dense_data()[j];
                if (v == 0.0f) continue;
                if (nnz >= cap) {
                    ctx.fail(ExecStatus::CapacityError);
                    return;
                }
                idx[nnz] = off + j;
                val[nnz] = v;
                ++nnz;
            }
        } else {
            for (uint32_t j = 0; j < in.nnz; ++j) {
                if (nnz >= cap) {
                    ctx.fail(ExecStatus::CapacityError);
                    return;
                }
                idx[nnz] = off + in.sparse_idx()[j];
                val[nnz] = in.sparse_val()[j];
                ++nnz;
            }
        }
    }
    out.kind = VecKind::Sparse;
    out.nnz = nnz;
    out.length = t.layout->output_type.max_length;
}

template <bool kSimd>
void k_l2norm_dense(StageExecCtx& ctx, const ResolvedTransform& t) {
    const DataVector& in = ctx.input(t, 0);
    DataVector& out = ctx.chain_slots[t.chain_pos];
    const simd::Ops& ops = kSimd ? simd::active_ops() : simd::scalar_ops();
    double ss = ops.sum_squares(in.dense_data(), in.length);
    // Zero vectors pass through unchanged rather than producing NaN.
    double inv = ss > 0.0 ? 1.0 / std::sqrt(ss) : 1.0;
    ops.scale(in.dense_data(), inv, out.dense_data(), in.length);
    out.kind = VecKind::Dense;
    out.length = in.length;
}

void k_l2norm_sparse(StageExecCtx& ctx, const ResolvedTransform& t) {
    const DataVector& in = ctx.input(t, 0);
    DataVector& out = ctx.chain_slots[t.chain_pos];
    double ss = simd::sum_squares_sparse(in.sparse_val(), in.nnz);
    double inv = ss > 0.0 ? 1.0 / std::sqrt(ss) : 1.0;
    std::memcpy(out.sparse_idx(), in.sparse_idx(), size_t(in.nnz) * 4);
    simd::scalar_ops().scale(in.sparse_val(), inv, out.sparse_val(), in.nnz);
    out.kind = VecKind::Sparse;
    out.nnz = in.nnz;
    out.length = in.length;
}

void write_score(DataVector& out, double score) {
    out.kind = VecKind::Dense;
    out.length = 2;
    out.dense_data()[0] = static_cast<float>(score);
    out.dense_data()[1] = static_cast<float>(1.0 / (1.0 + std::exp(-score)));
}

template <bool kSimd>
void k_linear_dense(StageExecCtx& ctx, const ResolvedTransform& t) {
    const DataVector& in = ctx.input(t, 0);
    const LinearParam& p = *t.linear;
    assert(in.length == p.weights.size());
    const simd::Ops& ops = kSimd ? simd::active_ops() : simd::scalar_ops();
    write_score(ctx.chain_slots[t.chain_pos],
                ops.dot(p.weights.data(), in.dense_data(), in.length) + double(p.bias));
}

void k_linear_sparse(StageExecCtx& ctx, const ResolvedTransform& t) {
    const DataVector& in = ctx.input(t, 0);
    const LinearParam& p = *t.linear;
    write_score(ctx.chain_slots[t.chain_pos],
                simd::dot_sparse(p.weights.data(), in.sparse_idx(), in.sparse_val(), in.nnz) +
                    double(p.bias));
}

template <bool kSimd>
void k_partial_linear_dense(StageExecCtx& ctx, const ResolvedTransform& t) {
    const DataVector& in = ctx.input(t, 0);
    const LinearParam& p = *t.linear;
    const simd::Ops& ops = kSimd ? simd::active_ops() : simd::scalar_ops();
    assert(t.layout->slice_offset + t.layout->slice_length <= p.weights.size());
    assert(in.length == t.layout->slice_length);
    DataVector& out = ctx.chain_slots[t.chain_pos];
    out.kind = VecKind::Dense;
    out.length = 1;
    out.dense_data()[0] = static_cast<float>(
        ops.dot(p.weights.data() + t.layout->slice_offset, in.dense_data(), in.length));
}

void k_partial_linear_sparse(StageExecCtx& ctx, const ResolvedTransform& t) {
    const DataVector& in = ctx.input(t, 0);
    const LinearParam& p = *t.linear;
    DataVector& out = ctx.chain_slots[t.chain_pos];
    out.kind = VecKind::Dense;
    out.length = 1;
    out.dense_data()[0] = static_cast<float>(simd::dot_sparse(
        p.weights.data() + t.layout->slice_offset, in.sparse_idx(), in.sparse_val(), in.nnz));
}

void k_linear_join(StageExecCtx& ctx, const ResolvedTransform& t) {
    double score = double(t.linear->bias);
    for (size_t i = 0; i < t.layout->input_slots.size(); ++i) {
        score += double(ctx.input(t, i).dense_data()[0]);
    }
    write_score(ctx.chain_slots[t.chain_pos], score);
}

template <bool kSimd>
void k_pca_dense(StageExecCtx& ctx, const ResolvedTransform& t) {
    const DataVector& in = ctx.input(t, 0);
    const PcaParam& p = *t.pca;
    DataVector& out = ctx.chain_slots[t.chain_pos];
    const simd::Ops& ops = kSimd ? simd::active_ops() : simd::scalar_ops();
    for (uint32_t i = 0; i < p.out_dim; ++i) {
        out.dense_data()[i] = static_cast<float>(
            ops.dot_centered(p.row(i), in.dense_data(), p.mean.data(), p.in_dim));
    }
    out.kind = VecKind::Dense;
    out.length = p.out_dim;
}

void k_pca_sparse(StageExecCtx& ctx, const ResolvedTransform& t) {
    const DataVector& in = ctx.input(t, 0);
    const PcaParam& p = *t.pca;
    DataVector& out = ctx.chain_slots[t.chain_pos];
    for (uint32_t i = 0; i < p.out_dim; ++i) {
        double v = simd::dot_sparse(p.row(i), in.sparse_idx(), in.sparse_val(), in.nnz);
        out.dense_data()[i] = static_cast<float>(v - p.rows_dot_mean[i]);
    }
    out.kind = VecKind::Dense;
    out.length = p.out_dim;
}

template <bool kSimd>
void k_kmeans_dense(StageExecCtx& ctx, const ResolvedTransform& t) {
    const DataVector& in = ctx.input(t, 0);
    const CentroidsParam& p = *t.centroids;
    DataVector& out = ctx.chain_slots[t.chain_pos];
    const simd::Ops& ops = kSimd ? simd::active_ops() : simd::scalar_ops();
    ops.sqdist_rows(p.data.data(), p.k, p.dim, in.dense_data(), out.dense_data());
    out.kind = VecKind::Dense;
    out.length = p.k;
}

void k_kmeans_sparse(StageExecCtx& ctx, const ResolvedTransform& t) {
    const DataVector& in = ctx.input(t, 0);
    const CentroidsParam& p = *t.centroids;
    DataVector& out = ctx.chain_slots[t.chain_pos];
    double ssx = simd::sum_squares_sparse(in.sparse_val(), in.nnz);
    for (uint32_t i = 0; i < p.k; ++i) {
        double cross =
            simd::dot_sparse(p.centroid(i), in.sparse_idx(), in.sparse_val(), in.nnz);
        out.dense_data()[i] = static_cast<float>(ssx - 2.0 * cross + double(p.norms2[i]));
    }
    out.kind = VecKind::Dense;
    out.length = p.k;
}

float sparse_at(const DataVector& v, uint32_t feature) {
    const uint32_t* idx = v.sparse_idx();
    const uint32_t* end = idx + v.nnz;
    const uint32_t* it = std::lower_bound(idx, end, feature);
    if (it == end || *it != feature) return 0.0f;
    return v.sparse_val()[it - idx];
}

template <bool kSparse>
void k_tree(StageExecCtx& ctx, const ResolvedTransform& t) {
    const DataVector& in = ctx.input(t, 0);
    const TreesParam& p = *t.trees;
    double acc = 0.0;
    for (const auto& tree : p.trees) {
        uint32_t at = 0;
        uint32_t guard = 0;
        const uint32_t limit = static_cast<uint32_t>(tree.size()) + 1;
        while (tree[at].feature >= 0 && guard++ < limit) {
            float x = kSparse ? sparse_at(in, static_cast<uint32_t>(tree[at].feature))
                              : in.dense_data()[tree[at].feature];
            at = x <= tree[at].value ? tree[at].left : tree[at].right;
        }
        acc += double(tree[at].value);
    }
    if (p.aggregate == TreeAggregate::Average) acc /= double(p.trees.size());
    DataVector& out = ctx.chain_slots[t.chain_pos];
    out.kind = VecKind::Dense;
    out.length = 1;
    out.dense_data()[0] = static_cast<float>(acc);
}

}  // namespace

const std::vector<KernelInfo>& kernel_table() {
    static const std::vector<KernelInfo> table = {
        {"csv.parse", TransformKind::CsvSource, Density::Dense, false, k_csv_parse},
        {"select.column", TransformKind::Select, Density::Dense, false, k_select},
        {"tokenize.unicode", TransformKind::Tokenize, Density::Dense, false, k_tokenize},
        {"ngram.char.sparse", TransformKind::CharNgram, Density::Dense, false, k_char_ngram},
        {"ngram.word.sparse", TransformKind::WordNgram, Density::Dense, false, k_word_ngram},
        {"concat.dense", TransformKind::Concat, Density::Dense, false, k_concat_dense},
        {"concat.sparse", TransformKind::Concat, Density::Sparse, false, k_concat_sparse},
        {"l2norm.dense.simd", TransformKind::NormalizeL2, Density::Dense, true, k_l2norm_dense<true>},
        {"l2norm.dense", TransformKind::NormalizeL2, Density::Dense, false, k_l2norm_dense<false>},
        {"l2norm.sparse", TransformKind::NormalizeL2, Density::Sparse, false, k_l2norm_sparse},
        {"linear.dense.simd", TransformKind::LinearBinaryClassifier, Density::Dense, true,
         k_linear_dense<true>},
        {"linear.dense", TransformKind::LinearBinaryClassifier, Density::Dense, false,
         k_linear_dense<false>},
        {"linear.sparse", TransformKind::LinearBinaryClassifier, Density::Sparse, false,
         k_linear_sparse},
        {"partial_linear.dense.simd", TransformKind::PartialLinear, Density::Dense, true,
         k_partial_linear_dense<true>},
        {"partial_linear.dense", TransformKind::PartialLinear, Density::Dense, false,
         k_partial_linear_dense<false>},
        {"partial_linear.sparse", TransformKind::PartialLinear, Density::Sparse, false,
         k_partial_linear_sparse},
        {"linear_join", TransformKind::LinearJoin, Density::Dense, false, k_linear_join},
        {"pca.dense.simd", TransformKind::PcaProject, Density::Dense, true, k_pca_dense<true>},
        {"pca.dense", TransformKind::PcaProject, Density::Dense, false, k_pca_dense<false>},
        {"pca.sparse", TransformKind::PcaProject, Density::Sparse, false, k_pca_sparse},
        {"kmeans.dense.simd", TransformKind::KMeansFeaturize, Density::Dense, true,
         k_kmeans_dense<true>},
        {"kmeans.dense", TransformKind::KMeansFeaturize, Density::Dense, false,
         k_kmeans_dense<false>},
        {"kmeans.sparse", TransformKind::KMeansFeaturize, Density::Sparse, false, k_kmeans_sparse},
        {"tree.dense", TransformKind::TreeEnsemble, Density::Dense, false, k_tree<false>},
        {"tree.sparse", TransformKind::TreeEnsemble, Density::Sparse, false, k_tree<true>},
    };
    return table;
}

const KernelInfo* find_kernel(std::string_view key) {
    for (const auto& k : kernel_table()) {
        if (k.key == key) return &k;
    }
    return nullptr;
}

namespace {
bool density_sensitive(TransformKind kind) {
    switch (kind) {
        case TransformKind::Concat:
        case TransformKind::NormalizeL2:
        case TransformKind::LinearBinaryClassifier:
        case TransformKind::PartialLinear:
        case TransformKind::PcaProject:
        case TransformKind::KMeansFeaturize:
        case TransformKind::TreeEnsemble:
            return true;
        default:
            return false;
    }
}
}  // namespace

std::string signature_string(TransformKind kind, Density input_density, bool vectorizable) {
    std::string s = kind_name(kind);
    if (density_sensitive(kind)) {
        s += input_density == Density::Dense ? ".dense" : ".sparse";
    }
    if (vectorizable) s += ".simd";
    return s;
}

const KernelInfo& select_kernel(TransformKind kind, Density input_density, bool vectorizable) {
    const KernelInfo* fallback = nullptr;
    for (const auto& k : kernel_table()) {
        if (k.kind != kind) continue;
        if (density_sensitive(kind) && k.input_density != input_density) continue;
        if (k.vectorized == vectorizable) return k;
        if (!k.vectorized) fallback = &k;
    }
    if (!vectorizable || fallback == nullptr) {
        std::string sig = signature_string(kind, input_density, vectorizable);
        throw CompileError(sig, "no physical implementation registered for signature " + sig);
    }
    return *fallback;
}

void execute_chain(StageExecCtx& ctx, std::span<const ResolvedTransform> chain,
                   std::span<const uint8_t> internal_mask) {
    for (const auto& rt : chain) {
        DataVector& out = ctx.chain_slots[rt.chain_pos];
        if (internal_mask[rt.chain_pos]) {
            uint32_t cap = rt.layout->output_capacity;
            if (cap > 0) {
                out.buf = PoolBuffer{ctx.arena->alloc_array<float>(cap), cap, 0};
            }
        }
        rt.fn(ctx, rt);
        if (ctx.status != ExecStatus::Ok) return;
    }
}

}  // namespace pipeserve::kern
