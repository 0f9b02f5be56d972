use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::table::{phi, table, Table};
use crate::{lcm, CycloError};

/// Arbitrary-precision rational coefficient.
pub type ExactRational = BigRational;

type SmallNum = SmallVec<[i64; 4]>;
type Wide = SmallVec<[i128; 8]>;

#[derive(Clone, Debug)]
enum Repr {
    /// `num / den` with everything fitting in `i64`.
    Small { den: i64, num: SmallNum },
    Big { den: BigInt, num: Vec<BigInt> },
}

/// An exact element of Q(ζ_N).
///
/// Stored as a positive common denominator and an integer numerator vector of
/// length φ(N), with the gcd of all entries equal to one. The representation
/// is canonical for a fixed conductor, so equality is a field-by-field check.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    n: u32,
    repr: Repr,
}

#[inline]
fn bits(v: u128) -> u32 {
    128 - v.leading_zeros()
}

fn ceil_log2(v: usize) -> u32 {
    usize::BITS - v.saturating_sub(1).leading_zeros()
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
        return num_integer::gcd(a as u64, b as u64) as u128;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Cyclotomic {
    fn from_wide(n: u32, den: i128, num: &[i128]) -> Cyclotomic {
        debug_assert!(den > 0);
        let mut g = den.unsigned_abs();
        for v in num {
            if g == 1 {
                break;
            }
            g = gcd_u128(g, v.unsigned_abs());
        }
        let g = g as i128;
        let den = den / g;
        if let Ok(d) = i64::try_from(den) {
            let mut out = SmallNum::with_capacity(num.len());
            let mut fits = true;
            for v in num {
                match i64::try_from(v / g) {
                    Ok(x) => out.push(x),
                    Err(_) => {
                        fits = false;
                        break;
                    }
                }
            }
            if fits {
                return Cyclotomic { n, repr: Repr::Small { den: d, num: out } };
            }
        }
        let num = num.iter().map(|v| BigInt::from(v / g)).collect();
        Cyclotomic { n, repr: Repr::Big { den: BigInt::from(den), num } }
    }

    fn from_big(n: u32, mut den: BigInt, mut num: Vec<BigInt>) -> Cyclotomic {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            den = -den;
            for v in num.iter_mut() {
                *v = -&*v;
            }
        }
        let mut g = den.clone();
        for v in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(v);
        }
        if !g.is_one() {
            den /= &g;
            for v in num.iter_mut() {
                *v /= &g;
            }
        }
        if let Some(d) = den.to_i64() {
            let small: Option<SmallNum> = num.iter().map(|v| v.to_i64()).collect();
            if let Some(small) = small {
                return Cyclotomic { n, repr: Repr::Small { den: d, num: small } };
            }
        }
        Cyclotomic { n, repr: Repr::Big { den, num } }
    }

    fn big_parts(&self) -> (BigInt, Vec<BigInt>) {
        match &self.repr {
            Repr::Small { den, num } => {
                (BigInt::from(*den), num.iter().map(|&v| BigInt::from(v)).collect())
            }
            Repr::Big { den, num } => (den.clone(), num.clone()),
        }
    }

    /// The zero of Q(ζ_n).
    pub fn zero(n: u32) -> Cyclotomic {
        assert!(n >= 1, "conductor must be positive");
        let phi = phi(n);
        Cyclotomic { n, repr: Repr::Small { den: 1, num: SmallVec::from_elem(0, phi) } }
    }

    pub fn one(n: u32) -> Cyclotomic {
        Cyclotomic::from_i64(n, 1)
    }

    pub fn from_i64(n: u32, v: i64) -> Cyclotomic {
        let mut z = Cyclotomic::zero(n);
        if let Repr::Small { num, .. } = &mut z.repr {
            num[0] = v;
        }
        z
    }

    /// The rational p/q as an element of Q(ζ_n).
    pub fn from_ratio(n: u32, p: i64, q: i64) -> Cyclotomic {
        assert!(q != 0, "zero denominator");
        let mut num = vec![0i128; phi(n)];
        num[0] = p as i128 * q.signum() as i128;
        Cyclotomic::from_wide(n, (q as i128).abs(), &num)
    }

    pub fn from_rational(n: u32, r: &ExactRational) -> Cyclotomic {
        let mut num = vec![BigInt::zero(); phi(n)];
        num[0] = r.numer().clone();
        Cyclotomic::from_big(n, r.denom().clone(), num)
    }

    /// Σ c_k ζ_n^k for a coefficient list of any length, reduced mod Φ_n.
    pub fn from_poly(n: u32, coeffs: &[ExactRational]) -> Cyclotomic {
        let t = table(n);
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let mut num = vec![BigInt::zero(); t.phi];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scaled = c.numer() * (&den / c.denom());
            for (slot, r) in num.iter_mut().zip(t.row(k)) {
                if *r != 0 {
                    *slot += &scaled * *r;
                }
            }
        }
        Cyclotomic::from_big(n, den, num)
    }

    /// ζ_n^k in canonical form.
    pub fn root(n: u32, k: i64) -> Cyclotomic {
        assert!(n >= 1, "conductor must be positive");
        let t = table(n);
        let k = k.rem_euclid(n as i64) as usize;
        Cyclotomic { n, repr: Repr::Small { den: 1, num: SmallVec::from_slice(t.row(k)) } }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Power-basis coefficients as exact rationals.
    pub fn coefficients(&self) -> Vec<ExactRational> {
        let (den, num) = self.big_parts();
        num.into_iter().map(|v| BigRational::new(v, den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num.iter().all(|&v| v == 0),
            Repr::Big { num, .. } => num.iter().all(|v| v.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small { den, num } => *den == 1 && num[0] == 1 && num[1..].iter().all(|&v| v == 0),
            Repr::Big { .. } => false,
        }
    }

    /// The rational value if the number lies in Q.
    pub fn to_rational(&self) -> Option<ExactRational> {
        let coeffs = self.coefficients();
        if coeffs[1..].iter().all(|c| c.is_zero()) {
            return Some(coeffs[0].clone());
        }
        None
    }

    /// Re-express the number inside Q(ζ_m); requires n | m.
    pub fn lift(&self, m: u32) -> Cyclotomic {
        assert!(m.is_multiple_of(self.n), "cannot lift conductor {} to {}", self.n, m);
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as usize;
        let t = table(m);
        match &self.repr {
            Repr::Small { den, num } => {
                let mut out = vec![0i128; t.phi];
                let mut ok = true;
                'outer: for (i, &c) in num.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (slot, &r) in out.iter_mut().zip(t.row(i * step)) {
                        match slot.checked_add(c as i128 * r as i128) {
                            Some(v) => *slot = v,
                            None => {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                }
                if ok {
                    return Cyclotomic::from_wide(m, *den as i128, &out);
                }
                self.lift_big(m, step, &t)
            }
            Repr::Big { .. } => self.lift_big(m, step, &t),
        }
    }

    fn lift_big(&self, m: u32, step: usize, t: &Table) -> Cyclotomic {
        let (den, num) = self.big_parts();
        let mut out = vec![BigInt::zero(); t.phi];
        for (i, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &r) in out.iter_mut().zip(t.row(i * step)) {
                if r != 0 {
                    *slot += c * r;
                }
            }
        }
        Cyclotomic::from_big(m, den, out)
    }

    fn aligned<'a>(
        a: &'a Cyclotomic,
        b: &'a Cyclotomic,
    ) -> (std::borrow::Cow<'a, Cyclotomic>, std::borrow::Cow<'a, Cyclotomic>) {
        use std::borrow::Cow;
        if a.n == b.n {
            (Cow::Borrowed(a), Cow::Borrowed(b))
        } else {
            let m = lcm(a.n as u64, b.n as u64) as u32;
            (Cow::Owned(a.lift(m)), Cow::Owned(b.lift(m)))
        }
    }

    fn add_signed(&self, other: &Cyclotomic, negate: bool) -> Cyclotomic {
        let (a, b) = Cyclotomic::aligned(self, other);
        let n = a.n;
        if let (Repr::Small { den: da, num: na }, Repr::Small { den: db, num: nb }) = (&a.repr, &b.repr) {
            let s: i128 = if negate { -1 } else { 1 };
            let mut out = Wide::with_capacity(na.len());
            if da == db {
                for (x, y) in na.iter().zip(nb) {
                    out.push(*x as i128 + s * *y as i128);
                }
                return Cyclotomic::from_wide(n, *da as i128, &out);
            }
            let l = (*da as i128).lcm(&(*db as i128));
            let (ma, mb) = (l / *da as i128, l / *db as i128);
            // both factors are below 2^63 in absolute value, so products stay below 2^126
            for (x, y) in na.iter().zip(nb) {
                out.push(*x as i128 * ma + s * (*y as i128 * mb));
            }
            return Cyclotomic::from_wide(n, l, &out);
        }
        let (da, na) = a.big_parts();
        let (db, nb) = b.big_parts();
        let l = da.lcm(&db);
        let (ma, mb) = (&l / &da, &l / &db);
        let out = na
            .iter()
            .zip(&nb)
            .map(|(x, y)| if negate { x * &ma - y * &mb } else { x * &ma + y * &mb })
            .collect();
        Cyclotomic::from_big(n, l, out)
    }

    fn mul_impl(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::aligned(self, other);
        let n = a.n;
        let t = table(n);
        if let (Repr::Small { den: da, num: na }, Repr::Small { den: db, num: nb }) = (&a.repr, &b.repr) {
            if let Some(r) = mul_small(&t, *da, na, *db, nb) {
                return r;
            }
        }
        let (da, na) = a.big_parts();
        let (db, nb) = b.big_parts();
        let phi = t.phi;
        let mut raw = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in na.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in nb.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigInt> = raw[..phi].to_vec();
        for (k, r) in raw.iter().enumerate().skip(phi) {
            if r.is_zero() {
                continue;
            }
            for (slot, &c) in out.iter_mut().zip(t.row(k)) {
                if c != 0 {
                    *slot += r * c;
                }
            }
        }
        Cyclotomic::from_big(n, da * db, out)
    }

    /// Multiply by the rational p/q.
    pub fn scale(&self, p: i64, q: i64) -> Cyclotomic {
        self.mul_impl(&Cyclotomic::from_ratio(self.n, p, q))
    }

    pub fn scale_rational(&self, r: &ExactRational) -> Cyclotomic {
        self.mul_impl(&Cyclotomic::from_rational(self.n, r))
    }

    /// The Galois conjugate ζ ↦ ζ^j (j coprime to the conductor).
    pub fn galois(&self, j: i64) -> Cyclotomic {
        let t = table(self.n);
        let j = j.rem_euclid(self.n as i64) as usize;
        let (den, num) = self.big_parts();
        let mut out = vec![BigInt::zero(); t.phi];
        for (i, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &r) in out.iter_mut().zip(t.row(i * j)) {
                if r != 0 {
                    *slot += c * r;
                }
            }
        }
        Cyclotomic::from_big(self.n, den, out)
    }

    /// Multiplicative inverse, computed as the product of the nontrivial
    /// Galois conjugates divided by the (rational) norm.
    pub fn inv(&self) -> Result<Cyclotomic, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero(self.n));
        }
        let n = self.n as i64;
        let mut prod = Cyclotomic::one(self.n);
        for j in 2..n.max(2) {
            if num_integer::gcd(j, n) == 1 {
                prod = prod.mul_impl(&self.galois(j));
            }
        }
        let norm = self.mul_impl(&prod);
        let norm = norm.to_rational().expect("field norm is rational");
        Ok(prod.scale_rational(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Cyclotomic) -> Result<Cyclotomic, CycloError> {
        Ok(self.mul_impl(&other.inv()?))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Cyclotomic, CycloError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyclotomic::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base);
            }
        }
        Ok(acc)
    }

    /// `self += a * b`.
    pub fn add_mul(&mut self, a: &Cyclotomic, b: &Cyclotomic) {
        let p = a.mul_impl(b);
        *self = self.add_signed(&p, false);
    }

    /// Total order on the canonical representation; only meaningful for
    /// deterministic sorting, not as a field ordering.
    pub fn canonical_cmp(&self, other: &Cyclotomic) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            let (da, na) = self.big_parts();
            let (db, nb) = other.big_parts();
            da.cmp(&db).then_with(|| na.cmp(&nb))
        })
    }
}

fn mul_small(t: &Table, da: i64, na: &[i64], db: i64, nb: &[i64]) -> Option<Cyclotomic> {
    let phi = t.phi;
    let ma = na.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as u128;
    let mb = nb.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as u128;
    if ma == 0 || mb == 0 {
        return Some(Cyclotomic::from_wide(t.n, 1, &vec![0i128; phi]));
    }
    let lg = ceil_log2(phi);
    if bits(ma) + bits(mb) + 2 * lg + t.entry_bits + 1 > 126 {
        return None;
    }
    let mut raw: Wide = SmallVec::from_elem(0, 2 * phi - 1);
    for (i, &x) in na.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let x = x as i128;
        for (j, &y) in nb.iter().enumerate() {
            raw[i + j] += x * y as i128;
        }
    }
    for k in phi..2 * phi - 1 {
        let r = raw[k];
        if r == 0 {
            continue;
        }
        let row = t.row(k);
        for s in 0..phi {
            raw[s] += r * row[s] as i128;
        }
    }
    Some(Cyclotomic::from_wide(t.n, da as i128 * db as i128, &raw[..phi]))
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Cyclotomic) -> bool {
        let (a, b) = Cyclotomic::aligned(self, other);
        match (&a.repr, &b.repr) {
            (Repr::Small { den: da, num: na }, Repr::Small { den: db, num: nb }) => da == db && na == nb,
            (Repr::Big { den: da, num: na }, Repr::Big { den: db, num: nb }) => da == db && na == nb,
            _ => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        let repr = match &self.repr {
            Repr::Small { den, num } => {
                if num.contains(&i64::MIN) {
                    let (d, nn) = self.big_parts();
                    return Cyclotomic::from_big(self.n, d, nn.into_iter().map(|v| -v).collect());
                }
                Repr::Small { den: *den, num: num.iter().map(|v| -v).collect() }
            }
            Repr::Big { den, num } => Repr::Big { den: den.clone(), num: num.iter().map(|v| -v).collect() },
        };
        Cyclotomic { n: self.n, repr }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                $body(self, rhs)
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                $body(&self, rhs)
            }
        }
        impl $tr<Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Cyclotomic, b: &Cyclotomic| a.add_signed(b, false));
binop!(Sub, sub, |a: &Cyclotomic, b: &Cyclotomic| a.add_signed(b, true));
binop!(Mul, mul, |a: &Cyclotomic, b: &Cyclotomic| a.mul_impl(b));

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        *self = self.add_signed(rhs, false);
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        *self = self.add_signed(rhs, true);
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = self.mul_impl(rhs);
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cyc({})[", self.n)?;
        for (i, c) in self.coefficients().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}/{}", c.numer(), c.denom())?;
        }
        f.write_str("]")
    }
}
