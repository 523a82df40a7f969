//! The identity catalogue.

use std::sync::OnceLock;

use super::sampling::Knob;
use super::{qde, series_ids as s, symbolic_ids as p, transform, Check, IdentitySpec, Kind, ParameterAssignment};
use crate::polyring::Symbol;

const X: Symbol = Symbol::X;
const Y: Symbol = Symbol::Y;
const A: Symbol = Symbol::A;
const LAMBDA: Symbol = Symbol::LAMBDA;
const MU: Symbol = Symbol::MU;
const ALPHA: Symbol = Symbol::ALPHA;
const RHO: Symbol = Symbol::RHO;
const SIGMA: Symbol = Symbol::SIGMA;

const NO_KNOBS: &[Knob] = &[];

fn rho_ne_sigma(a: &ParameterAssignment) -> bool {
    a.value(RHO) != a.value(SIGMA)
}

fn a_ne_one(a: &ParameterAssignment) -> bool {
    a.value(A).is_none_or(|v| !v.is_one())
}

fn series(
    id: &'static str,
    slug: &'static str,
    formula: &'static str,
    params: &'static [Symbol],
    knobs: &'static [Knob],
    check: super::PairsFn,
) -> IdentitySpec {
    IdentitySpec {
        id,
        slug,
        formula,
        kind: Kind::Series,
        params,
        knobs,
        constraint: None,
        randomized: false,
        check: Check::Pairs(check),
    }
}

fn symbolic(id: &'static str, slug: &'static str, formula: &'static str, check: super::PairsFn) -> IdentitySpec {
    IdentitySpec {
        id,
        slug,
        formula,
        kind: Kind::SymbolicPoly,
        params: &[],
        knobs: NO_KNOBS,
        constraint: None,
        randomized: false,
        check: Check::Pairs(check),
    }
}

fn seeded(
    id: &'static str,
    slug: &'static str,
    formula: &'static str,
    var: Symbol,
    build: super::SeededFn,
) -> IdentitySpec {
    IdentitySpec {
        id,
        slug,
        formula,
        kind: Kind::GenerateAndCheck,
        params: &[],
        knobs: NO_KNOBS,
        constraint: None,
        randomized: true,
        check: Check::Seeded { var, build },
    }
}

fn build() -> Vec<IdentitySpec> {
    vec![
        symbolic(
            "P1",
            "pochhammer-split",
            "(a;q)_{n+k} = (a;q)_n (aq^n;q)_k, 0 <= n,k <= 6",
            p::pochhammer_split,
        ),
        symbolic(
            "P2",
            "qbinom-symmetry",
            "[n;k] = [n;n-k] = (q;q)_n/((q;q)_k (q;q)_{n-k}), n <= 8",
            p::qbinom_symmetry,
        ),
        series(
            "E1",
            "q-binomial-theorem",
            "sum_k (a;q)_k z^k/(q;q)_k = (az;q)_inf/(z;q)_inf, z = xt",
            &[A, X],
            NO_KNOBS,
            s::q_binomial_theorem,
        ),
        series(
            "E2",
            "euler-identity",
            "sum_k z^k/(q;q)_k = 1/(z;q)_inf, z = xt",
            &[X],
            NO_KNOBS,
            s::euler_identity,
        ),
        series(
            "E3",
            "euler-inverse",
            "sum_k (-1)^k q^C(k,2) z^k/(q;q)_k = (z;q)_inf, z = xt",
            &[X],
            NO_KNOBS,
            s::euler_inverse,
        ),
        series(
            "C1",
            "cauchy-genfunc",
            "sum_n p_n(x,y) t^n/(q;q)_n = (yt;q)_inf/(xt;q)_inf",
            &[X, Y],
            NO_KNOBS,
            s::cauchy_genfunc,
        ),
        symbolic(
            "C2",
            "cauchy-reflection",
            "p_n(x,y) = (-1)^n q^C(n,2) p_n(y, q^{1-n} x), n <= 6",
            p::cauchy_reflection,
        ),
        symbolic(
            "C3",
            "cauchy-shifted-reflection",
            "p_{n-k}(x, q^{1-n} y) = (-1)^{n-k} q^{C(k,2)-C(n,2)} p_{n-k}(y, q^k x), 0 <= k <= n <= 6",
            p::cauchy_shifted_reflection,
        ),
        symbolic(
            "C4",
            "cauchy-product-form",
            "p_n(x,y) = x^n (y/x;q)_n = p_n(x,y,0), n <= 8",
            p::cauchy_product_form,
        ),
        IdentitySpec {
            randomized: true,
            ..symbolic(
                "L1",
                "leibniz-dq",
                "D_q^n{fg} = sum_k [n;k] q^{k(k-n)} D_q^k{f(x)} D_q^{n-k}{g(q^k x)}, deg f,g <= 4, n <= 4",
                p::leibniz_dq,
            )
        },
        series(
            "L2",
            "leibniz-dq-euler",
            "D_q^n{x^k/(xt;q)_inf} = (q;q)_k/(xt;q)_inf sum_j [n;j] (xt;q)_j t^{n-j} x^{k-j}/(q;q)_{k-j}",
            &[],
            &[Knob { name: "n", lo: 0, hi: 3 }, Knob { name: "k", lo: 0, hi: 3 }],
            s::leibniz_dq_euler,
        ),
        symbolic(
            "D1",
            "gencauchy-operator-form",
            "E~(a,y;D_q){x^n} = sum_k [n;k] (-1)^k q^C(k,2) (a;q)_k x^{n-k} y^k = p_n(x,y,a), n <= 6",
            p::gencauchy_operator_form,
        ),
        seeded(
            "T1",
            "e-frak-qde",
            "f = E(b theta_a){f0(a)} iff a f(aq,b) - b f(a,bq) = (a-b) f(aq,bq), f(a,0) = f0",
            A,
            qde::e_frak_qde,
        ),
        seeded(
            "T2",
            "cauchy-expansion-qde",
            "f = sum_n c_n p_n(x,y,a) iff x[f(x,y)-f(x,qy)] = y[f(qx,qy)-f(x,qy)] - ay[f(qx,q^2y)-f(x,q^2y)]",
            Symbol::U,
            qde::cauchy_expansion_qde,
        ),
        seeded(
            "T3",
            "e-tilde-qde",
            "f = E~(a,y;D_q){f0(x)} iff x[f(x,y)-f(x,qy)] = y[f(qx,qy)-f(x,qy)] - ay[f(qx,q^2y)-f(x,q^2y)], f(x,0) = f0",
            X,
            qde::e_tilde_qde,
        ),
        seeded(
            "T4",
            "l-tilde-qde",
            "f = L~(a,z;theta_xy){f0}, f0 in span p_n(y,x) iff \
             (x/q-y)[f(x,y,z)-f(x,y,qz)] = z[f(x/q,y,qz)-f(x,qy,qz)] + az[f(x,qy,q^2z)-f(x/q,y,q^2z)]",
            Symbol::U,
            qde::l_tilde_qde,
        ),
        seeded(
            "T5",
            "r-qde",
            "f = R(bD_q){f0(a)} iff a f(a,b) - b f(qa,qb) = (a-b) f(a,qb), f(a,0) = f0",
            A,
            qde::r_qde,
        ),
        series(
            "G1",
            "gencauchy-genfunc",
            "sum_n p_n(x,y,a) t^n/(q;q)_n = 1/(xt;q)_inf 1phi1[a; 0; q, yt]",
            &[X, Y, A],
            NO_KNOBS,
            s::gencauchy_genfunc,
        ),
        series(
            "G2",
            "cauchy-genfunc-a0",
            "sum_n p_n(x,y,0) t^n/(q;q)_n = (yt;q)_inf/(xt;q)_inf",
            &[X, Y],
            NO_KNOBS,
            s::cauchy_genfunc_a0,
        ),
        IdentitySpec {
            constraint: Some(rho_ne_sigma),
            ..series(
                "G3",
                "gencauchy-sr-genfunc",
                "sum_n p_n(x,y,a) (s/r;q)_n r^n/(q;q)_n = (sx;q)_inf/(rx;q)_inf \
                 sum_n (-1)^n q^C(n,2) (a;q)_n (s/r;q)_n (ry)^n/((sx;q)_n (q;q)_n), s = sigma t, r = rho t",
                &[X, Y, A, RHO, SIGMA],
                NO_KNOBS,
                s::gencauchy_sr_genfunc,
            )
        },
        series(
            "G4",
            "gencauchy-s-genfunc",
            "sum_n p_n(x,y,a) (-1)^n q^C(n,2) s^n/(q;q)_n = (sx;q)_inf 1phi2[a; sx, 0; q, sy], s = sigma t",
            &[X, Y, A, SIGMA],
            NO_KNOBS,
            s::gencauchy_s_genfunc,
        ),
        series(
            "G5",
            "gencauchy-shifted-genfunc",
            "sum_n p_{n+k}(x,y,a) t^n/(q;q)_n = x^k/(xt;q)_inf \
             sum_n (q^-k, xt, a;q)_n (yq^k/x)^n/(q;q)_n 1phi1[aq^n; 0; q, ytq^n]",
            &[X, Y, A],
            &[Knob { name: "k", lo: 0, hi: 3 }],
            s::gencauchy_shifted_genfunc,
        ),
        series(
            "G6",
            "sr-reduces-to-gencauchy",
            "the (s,r) generating function at s = 0, r = t equals sum_n p_n(x,y,a) t^n/(q;q)_n, both sides",
            &[X, Y, A],
            NO_KNOBS,
            s::sr_reduces_to_gencauchy,
        ),
        series(
            "G7",
            "sr-reduces-to-cauchy",
            "the (s,r) generating function at s = 0, r = t, a = 0 equals the Cauchy generating function, both sides",
            &[X, Y],
            NO_KNOBS,
            s::sr_reduces_to_cauchy,
        ),
        series(
            "G8",
            "shifted-k0-reduces",
            "the shifted generating function at k = 0 equals sum_n p_n(x,y,a) t^n/(q;q)_n, both sides",
            &[X, Y, A],
            NO_KNOBS,
            s::shifted_k0_reduces,
        ),
        symbolic(
            "S1",
            "hahn-definition",
            "phi_n^(alpha)(x|q) = sum_k [n;k] (alpha;q)_k x^k; alpha = 0: h_{n+1} = (1+x)h_n - x(1-q^n)h_{n-1}",
            p::hahn_definition,
        ),
        series(
            "S2",
            "hahn-lambda-genfunc",
            "sum_n phi_n^(alpha)(x|q) (lambda;q)_n t^n/(q;q)_n = (lambda t;q)_inf/(t;q)_inf 2phi1[lambda, alpha; lambda t; q, xt]",
            &[X, LAMBDA, ALPHA],
            NO_KNOBS,
            s::hahn_lambda_genfunc,
        ),
        series(
            "S3",
            "hahn-genfunc",
            "sum_n phi_n^(alpha)(x|q) t^n/(q;q)_n = (alpha xt;q)_inf/((xt;q)_inf (t;q)_inf)",
            &[X, ALPHA],
            NO_KNOBS,
            s::hahn_genfunc,
        ),
        IdentitySpec {
            constraint: Some(a_ne_one),
            ..series(
                "S4",
                "hahn-gencauchy-genfunc",
                "sum_n phi_n^(alpha)(x|q) p_n(lambda,mu,a) t^n/(q;q)_n = (alpha lambda xt;q)_inf/((lambda xt;q)_inf (lambda t;q)_inf) \
                 sum_k (-1)^k q^C(k,2) (a, alpha, lambda t;q)_k (mu xt)^k/((alpha lambda xt;q)_k (q;q)_k) \
                 1phi1[aq^k; 0; q, mu t q^k], alpha = q^-M",
                &[X, LAMBDA, MU, A],
                &[Knob { name: "M", lo: 0, hi: 4 }],
                s::hahn_gencauchy_genfunc,
            )
        },
        series(
            "S5",
            "hahn-gencauchy-reductions",
            "the Hahn-generalized-Cauchy generating function at (lambda, mu, a) = (1, lambda, 0) and (1, 0, 0) \
             equals the lambda- and plain Hahn generating functions, alpha = q^-M, both sides",
            &[X, LAMBDA],
            &[Knob { name: "M", lo: 0, hi: 4 }],
            s::hahn_gencauchy_reductions,
        ),
        IdentitySpec {
            kind: Kind::Transform,
            ..series(
                "X1",
                "transform-ab",
                "sum_k A(k) x^k = sum_j B(j)/(xtq^j;q)_inf implies \
                 sum_k A(k) p_k(x,y,a) = sum_j B(j)/(xtq^j;q)_inf 1phi1[a; 0; q, ytq^j]",
                &[Y, A],
                NO_KNOBS,
                transform::transform_identity,
            )
        },
    ]
}

/// Every registered identity, in a fixed order.
pub fn registry() -> &'static [IdentitySpec] {
    static REGISTRY: OnceLock<Vec<IdentitySpec>> = OnceLock::new();
    REGISTRY.get_or_init(build)
}

/// Looks up an identity by id (case-insensitive) or slug.
pub fn find(key: &str) -> Option<&'static IdentitySpec> {
    registry()
        .iter()
        .find(|s| s.id.eq_ignore_ascii_case(key) || s.slug == key)
}
