#include "core/graded.hpp"

#include <numeric>
#include <stdexcept>

namespace su22 {

GradedSpace::GradedSpace(int d, std::vector<int> p) : dim(d), parity(std::move(p)) {
    if (dim <= 0) throw std::invalid_argument("GradedSpace: dim must be positive");
    if (static_cast<int>(parity.size()) != dim)
        throw std::invalid_argument("GradedSpace: parity list length must equal dim");
    for (int b : parity)
        if (b != 0 && b != 1) throw std::invalid_argument("GradedSpace: parity entries must be 0/1");
}

GradedSpace GradedSpace::fundamental() { return GradedSpace(4, {0, 0, 1, 1}); }

GradedSpace GradedSpace::trivial() { return GradedSpace(1, {0}); }

int GradedSpace::n_even() const {
    return dim - n_odd();
}

int GradedSpace::n_odd() const {
    return std::accumulate(parity.begin(), parity.end(), 0);
}

GradedSpace tensor(const GradedSpace& a, const GradedSpace& b) {
    std::vector<int> p;
    p.reserve(static_cast<size_t>(a.dim) * b.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < b.dim; ++j) p.push_back((a.parity[i] + b.parity[j]) & 1);
    return GradedSpace(a.dim * b.dim, std::move(p));
}

TensorLayout::TensorLayout(std::vector<GradedSpace> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw std::invalid_argument("TensorLayout: no factors");
    composite_ = factors_[0];
    for (size_t k = 1; k < factors_.size(); ++k) composite_ = tensor(composite_, factors_[k]);
    stride_.assign(factors_.size(), 1);
    for (int k = rank() - 2; k >= 0; --k) stride_[k] = stride_[k + 1] * factors_[k + 1].dim;
}

void TensorLayout::split(long index, std::span<int> digits) const {
    for (int k = 0; k < rank(); ++k) {
        digits[k] = static_cast<int>(index / stride_[k]);
        index %= stride_[k];
    }
}

long TensorLayout::fuse(std::span<const int> digits) const {
    long idx = 0;
    for (int k = 0; k < rank(); ++k) idx += digits[k] * stride_[k];
    return idx;
}

TensorLayout TensorLayout::without_factor(int k) const {
    std::vector<GradedSpace> f;
    for (int i = 0; i < rank(); ++i)
        if (i != k) f.push_back(factors_[i]);
    return TensorLayout(std::move(f));
}

GradedOperator::GradedOperator(GradedSpace dom, GradedSpace cod, Mat m)
    : domain(std::move(dom)), codomain(std::move(cod)), mat(std::move(m)) {
    if (mat.rows() != codomain.dim || mat.cols() != domain.dim)
        throw std::invalid_argument("GradedOperator: matrix shape does not match spaces");
}

GradedOperator GradedOperator::identity(const GradedSpace& v) {
    return {v, v, Mat::Identity(v.dim, v.dim)};
}

GradedOperator GradedOperator::zero(const GradedSpace& dom, const GradedSpace& cod) {
    return {dom, cod, Mat::Zero(cod.dim, dom.dim)};
}

GradedOperator GradedOperator::unit(const GradedSpace& v, int ket, int bra) {
    Mat m = Mat::Zero(v.dim, v.dim);
    m(ket, bra) = 1.0;
    return {v, v, std::move(m)};
}

GradedOperator GradedOperator::operator*(const GradedOperator& rhs) const {
    if (!(domain == rhs.codomain))
        throw std::invalid_argument("GradedOperator: composition space mismatch");
    return {rhs.domain, codomain, mat * rhs.mat};
}

GradedOperator GradedOperator::operator+(const GradedOperator& rhs) const {
    return {domain, codomain, mat + rhs.mat};
}

GradedOperator GradedOperator::operator-(const GradedOperator& rhs) const {
    return {domain, codomain, mat - rhs.mat};
}

GradedOperator GradedOperator::operator*(Cplx a) const { return {domain, codomain, mat * a}; }

GradedOperator GradedOperator::adjoint() const { return {codomain, domain, mat.adjoint()}; }

GradedOperator super_tensor(const GradedOperator& a, const GradedOperator& b) {
    const GradedSpace dom = tensor(a.domain, b.domain);
    const GradedSpace cod = tensor(a.codomain, b.codomain);
    Mat m(cod.dim, dom.dim);
    for (int beta = 0; beta < a.codomain.dim; ++beta)
        for (int delta = 0; delta < b.codomain.dim; ++delta) {
            const long row = static_cast<long>(beta) * b.codomain.dim + delta;
            const int pd = b.codomain.parity[delta];
            for (int alpha = 0; alpha < a.domain.dim; ++alpha) {
                const int sgn =
                    ((a.domain.parity[alpha] + a.codomain.parity[beta]) * pd) & 1 ? -1 : 1;
                const Cplx av = a.mat(beta, alpha) * double(sgn);
                for (int gamma = 0; gamma < b.domain.dim; ++gamma) {
                    const long col = static_cast<long>(alpha) * b.domain.dim + gamma;
                    m(row, col) = av * b.mat(delta, gamma);
                }
            }
        }
    return {dom, cod, std::move(m)};
}

GradedOperator graded_permutation(const GradedSpace& v) { return swap_op(v, v); }

GradedOperator swap_op(const GradedSpace& v, const GradedSpace& w) {
    const GradedSpace dom = tensor(v, w);
    const GradedSpace cod = tensor(w, v);
    Mat m = Mat::Zero(cod.dim, dom.dim);
    for (int a = 0; a < v.dim; ++a)
        for (int b = 0; b < w.dim; ++b) {
            const long col = static_cast<long>(a) * w.dim + b;
            const long row = static_cast<long>(b) * v.dim + a;
            m(row, col) = (v.parity[a] * w.parity[b]) & 1 ? -1.0 : 1.0;
        }
    return {dom, cod, std::move(m)};
}

GradedOperator exchange_factors(const GradedOperator& x, const GradedSpace& a,
                                const GradedSpace& b) {
    return swap_op(a, b) * x * swap_op(b, a);
}

namespace {

struct EmbedPlan {
    std::vector<int> anchor;       // positions occupied by the operator
    std::vector<int> bystander;    // remaining positions
    TensorLayout op_layout;        // layout of the operator's own factors
    TensorLayout by_layout;        // layout of the bystander factors (or trivial)
};

EmbedPlan make_plan(const GradedOperator& a, const TensorLayout& layout,
                    std::span<const int> positions) {
    EmbedPlan plan{{}, {}, TensorLayout({GradedSpace::trivial()}),
                   TensorLayout({GradedSpace::trivial()})};
    plan.anchor.assign(positions.begin(), positions.end());
    for (size_t i = 1; i < plan.anchor.size(); ++i)
        if (plan.anchor[i] <= plan.anchor[i - 1])
            throw std::invalid_argument("embed: positions must be strictly increasing");
    if (plan.anchor.front() < 0 || plan.anchor.back() >= layout.rank())
        throw std::out_of_range("embed: position out of range");

    std::vector<GradedSpace> opf, byf;
    size_t next = 0;
    for (int k = 0; k < layout.rank(); ++k) {
        if (next < plan.anchor.size() && plan.anchor[next] == k) {
            opf.push_back(layout.factor(k));
            ++next;
        } else {
            plan.bystander.push_back(k);
            byf.push_back(layout.factor(k));
        }
    }
    plan.op_layout = TensorLayout(opf);
    if (!byf.empty()) plan.by_layout = TensorLayout(byf);
    if (!(a.domain == plan.op_layout.composite()) || !(a.codomain == plan.op_layout.composite()))
        throw std::invalid_argument("embed: operator does not match layout factors");
    return plan;
}

// Sign exponent for one operator entry against one bystander configuration:
// sum over anchor slots s of (p(row_s)+p(col_s)) * (parity of bystanders to
// the right of that slot). Derived from iterating the super_tensor rule.
int embed_sign(const EmbedPlan& plan, std::span<const int> arow, std::span<const int> acol,
               std::span<const int> bydig) {
    int e = 0;
    for (size_t s = 0; s < plan.anchor.size(); ++s) {
        const auto& vs = plan.op_layout.factor(static_cast<int>(s));
        const int w = (vs.parity[arow[s]] + vs.parity[acol[s]]) & 1;
        if (!w) continue;
        int suffix = 0;
        for (size_t q = 0; q < plan.bystander.size(); ++q)
            if (plan.bystander[q] > plan.anchor[s])
                suffix += plan.by_layout.factor(static_cast<int>(q)).parity[bydig[q]];
        e += suffix;
    }
    return e & 1;
}

}  // namespace

GradedOperator embed(const GradedOperator& a, const TensorLayout& layout,
                     std::span<const int> positions) {
    const EmbedPlan plan = make_plan(a, layout, positions);
    const long d_by = plan.bystander.empty() ? 1 : plan.by_layout.dim();
    const int nr = layout.rank();

    Mat out = Mat::Zero(layout.dim(), layout.dim());
    std::vector<int> arow(plan.anchor.size()), acol(plan.anchor.size());
    std::vector<int> bydig(std::max<size_t>(plan.bystander.size(), 1));
    std::vector<int> full_row(nr), full_col(nr);

    for (long by = 0; by < d_by; ++by) {
        if (!plan.bystander.empty())
            plan.by_layout.split(by, std::span<int>(bydig.data(), plan.bystander.size()));
        for (long r = 0; r < plan.op_layout.dim(); ++r) {
            plan.op_layout.split(r, arow);
            for (long c = 0; c < plan.op_layout.dim(); ++c) {
                const Cplx v = a.mat(r, c);
                if (v == Cplx{0, 0}) continue;
                plan.op_layout.split(c, acol);
                for (size_t s = 0; s < plan.anchor.size(); ++s) {
                    full_row[plan.anchor[s]] = arow[s];
                    full_col[plan.anchor[s]] = acol[s];
                }
                for (size_t q = 0; q < plan.bystander.size(); ++q) {
                    full_row[plan.bystander[q]] = bydig[q];
                    full_col[plan.bystander[q]] = bydig[q];
                }
                const int sgn = embed_sign(plan, arow, acol,
                                           std::span<const int>(bydig.data(), plan.bystander.size()));
                out(layout.fuse(full_row), layout.fuse(full_col)) = sgn ? -v : v;
            }
        }
    }
    return {layout.composite(), layout.composite(), std::move(out)};
}

void embed_apply_right(Mat& m, const GradedOperator& a, const TensorLayout& layout,
                       std::span<const int> positions) {
    // Column c of embed(A) holds +-A[r, c_op] at rows sharing c's bystander
    // digits, so M*embed(A) is a batch of small dense products.
    const EmbedPlan plan = make_plan(a, layout, positions);
    const long d_by = plan.bystander.empty() ? 1 : plan.by_layout.dim();
    const long d_op = plan.op_layout.dim();
    const int nr = layout.rank();

    Mat result = Mat::Zero(m.rows(), layout.dim());
    std::vector<int> dig(plan.anchor.size()), bydig(std::max<size_t>(plan.bystander.size(), 1));
    std::vector<int> full(nr);
    std::vector<long> col_of(d_op);
    Mat gathered(m.rows(), d_op), signed_a(d_op, d_op);
    std::vector<int> arow(plan.anchor.size()), acol(plan.anchor.size());

    for (long by = 0; by < d_by; ++by) {
        if (!plan.bystander.empty())
            plan.by_layout.split(by, std::span<int>(bydig.data(), plan.bystander.size()));
        for (size_t q = 0; q < plan.bystander.size(); ++q) full[plan.bystander[q]] = bydig[q];
        for (long x = 0; x < d_op; ++x) {
            plan.op_layout.split(x, dig);
            for (size_t s = 0; s < plan.anchor.size(); ++s) full[plan.anchor[s]] = dig[s];
            col_of[x] = layout.fuse(full);
        }
        for (long r = 0; r < d_op; ++r) {
            plan.op_layout.split(r, arow);
            for (long c = 0; c < d_op; ++c) {
                plan.op_layout.split(c, acol);
                const int sgn = embed_sign(plan, arow, acol,
                                           std::span<const int>(bydig.data(), plan.bystander.size()));
                signed_a(r, c) = sgn ? -a.mat(r, c) : a.mat(r, c);
            }
        }
        for (long x = 0; x < d_op; ++x) gathered.col(x) = m.col(col_of[x]);
        Mat prod = gathered * signed_a;
        for (long x = 0; x < d_op; ++x) result.col(col_of[x]) = prod.col(x);
    }
    m.swap(result);
}

GradedOperator super_partial_trace(const GradedOperator& x, const TensorLayout& layout, int k) {
    if (k < 0 || k >= layout.rank()) throw std::out_of_range("super_partial_trace: bad factor");
    const TensorLayout red = layout.without_factor(k);
    const GradedSpace& vk = layout.factor(k);
    const int nr = layout.rank();

    Mat out = Mat::Zero(red.dim(), red.dim());
    std::vector<int> rdig(std::max(nr - 1, 1)), cdig(std::max(nr - 1, 1));
    std::vector<int> full_r(nr), full_c(nr);

    for (long r = 0; r < red.dim(); ++r) {
        if (nr > 1) red.split(r, std::span<int>(rdig.data(), nr - 1));
        int left_r = 0;
        for (int i = 0; i < k; ++i) left_r += layout.factor(i).parity[rdig[i]];
        for (long c = 0; c < red.dim(); ++c) {
            if (nr > 1) red.split(c, std::span<int>(cdig.data(), nr - 1));
            int left_c = 0;
            for (int i = 0; i < k; ++i) left_c += layout.factor(i).parity[cdig[i]];
            for (int i = 0, j = 0; i < nr; ++i) {
                if (i == k) continue;
                full_r[i] = rdig[j];
                full_c[i] = cdig[j];
                ++j;
            }
            Cplx acc{0, 0};
            for (int a = 0; a < vk.dim; ++a) {
                full_r[k] = full_c[k] = a;
                const int e = vk.parity[a] * (1 + left_r + left_c);
                const Cplx v = x.mat(layout.fuse(full_r), layout.fuse(full_c));
                acc += (e & 1) ? -v : v;
            }
            out(r, c) = acc;
        }
    }
    return {red.composite(), red.composite(), std::move(out)};
}

GradedOperator super_transpose(const GradedOperator& x, const TensorLayout& layout, int k) {
    if (k < 0 || k >= layout.rank()) throw std::out_of_range("super_transpose: bad factor");
    const GradedSpace& vk = layout.factor(k);
    const int nr = layout.rank();
    Mat out(layout.dim(), layout.dim());
    std::vector<int> rdig(nr), cdig(nr);
    for (long r = 0; r < layout.dim(); ++r) {
        layout.split(r, rdig);
        for (long c = 0; c < layout.dim(); ++c) {
            layout.split(c, cdig);
            const int i = rdig[k], j = cdig[k];
            std::swap(rdig[k], cdig[k]);
            const Cplx v = x.mat(layout.fuse(rdig), layout.fuse(cdig));
            std::swap(rdig[k], cdig[k]);
            const int e = vk.parity[i] * (vk.parity[i] + vk.parity[j]);
            out(r, c) = (e & 1) ? -v : v;
        }
    }
    return {layout.composite(), layout.composite(), std::move(out)};
}

Cplx supertrace(const GradedOperator& x) {
    Cplx acc{0, 0};
    for (int a = 0; a < x.domain.dim; ++a)
        acc += x.domain.parity[a] ? -x.mat(a, a) : x.mat(a, a);
    return acc;
}

double rel_residual(const GradedOperator& lhs, const GradedOperator& rhs) {
    return rel_residual(lhs.mat, rhs.mat);
}

}  // namespace su22
