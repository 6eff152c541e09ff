# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled arithmetic kernel.

Same surface and same results as ``wlab._pykernel``, with the inner
loops in C.  Unit-part factorial products additionally use Montgomery
multiplication with four interleaved accumulators when the modulus is
odd; the scale fixup for the deferred Montgomery factors happens once
per segment.  Callers validate domains before dispatching here.
"""

cdef extern from *:
    """
    #include <stdint.h>

    typedef uint64_t wl_u64;
    typedef unsigned __int128 wl_u128;

    /* (a*b) %% m through a 128-bit product; m < 2^63 */
    static inline wl_u64 wl_mulmod(wl_u64 a, wl_u64 b, wl_u64 m) {
        return (wl_u64)(((wl_u128)a * b) % m);
    }

    /* -q^{-1} mod 2^64 for odd q (Newton; doubles correct bits per step) */
    static inline wl_u64 wl_mont_key(wl_u64 q) {
        wl_u64 x = q;
        x *= 2 - q * x;
        x *= 2 - q * x;
        x *= 2 - q * x;
        x *= 2 - q * x;
        x *= 2 - q * x;
        return (wl_u64)(0 - x);
    }

    /* a*b*2^-64 mod q for inputs below odd q < 2^63 */
    static inline wl_u64 wl_montmul(wl_u64 a, wl_u64 b, wl_u64 q, wl_u64 key) {
        wl_u128 t = (wl_u128)a * b;
        wl_u64 m = (wl_u64)t * key;
        wl_u128 s = t + (wl_u128)m * q;
        wl_u64 r = (wl_u64)(s >> 64);
        return r >= q ? r - q : r;
    }

    /* 2^64 mod q */
    static inline wl_u64 wl_r64(wl_u64 q) {
        return (wl_u64)((((wl_u128)1) << 64) % q);
    }
    """
    ctypedef unsigned long long u64 "wl_u64"
    u64 wl_mulmod(u64 a, u64 b, u64 m) nogil
    u64 wl_mont_key(u64 q) nogil
    u64 wl_montmul(u64 a, u64 b, u64 q, u64 key) nogil
    u64 wl_r64(u64 q) nogil

NAME = "c"

# Deterministic Miller-Rabin witness set; correct for every n below
# 3_317_044_064_679_887_385_961_981, which covers the full u64 range.
cdef u64 _MRB[12]
_MRB[0] = 2; _MRB[1] = 3; _MRB[2] = 5; _MRB[3] = 7
_MRB[4] = 11; _MRB[5] = 13; _MRB[6] = 17; _MRB[7] = 19
_MRB[8] = 23; _MRB[9] = 29; _MRB[10] = 31; _MRB[11] = 37

cdef int _WSTEP[8]
_WSTEP[0] = 4; _WSTEP[1] = 2; _WSTEP[2] = 4; _WSTEP[3] = 2
_WSTEP[4] = 4; _WSTEP[5] = 6; _WSTEP[6] = 2; _WSTEP[7] = 6

DEF WHEEL_LIMIT = 100000
# Below this segment length the Montgomery setup costs more than it saves.
DEF MONT_CUTOFF = 128


cdef u64 _powmod(u64 b, u64 e, u64 m) noexcept nogil:
    cdef u64 r = 1 % m
    b %= m
    while e:
        if e & 1:
            r = wl_mulmod(r, b, m)
        b = wl_mulmod(b, b, m)
        e >>= 1
    return r


cdef u64 _gcd(u64 a, u64 b) noexcept nogil:
    cdef u64 t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef u64 _inv_mod(u64 a, u64 m) noexcept nogil:
    # extended Euclid; requires gcd(a, m) == 1 and 2 <= m < 2**63
    cdef long long t = 0, newt = 1
    cdef long long r = <long long> m, newr = <long long> (a % m)
    cdef long long qq, tmp
    while newr:
        qq = r // newr
        tmp = t - qq * newt
        t = newt
        newt = tmp
        tmp = r - qq * newr
        r = newr
        newr = tmp
    if t < 0:
        t += <long long> m
    return <u64> t


cdef bint _is_prime(u64 n) noexcept nogil:
    cdef int i, r, s
    cdef u64 d, x
    cdef bint composite
    if n < 2:
        return False
    for i in range(12):
        if n % _MRB[i] == 0:
            return n == _MRB[i]
    d = n - 1
    s = 0
    while (d & 1) == 0:
        d >>= 1
        s += 1
    for i in range(12):
        x = _powmod(_MRB[i], d, n)
        if x == 1 or x == n - 1:
            continue
        composite = True
        for r in range(s - 1):
            x = wl_mulmod(x, x, n)
            if x == n - 1:
                composite = False
                break
        if composite:
            return False
    return True


cdef u64 _brent_rho(u64 n) noexcept nogil:
    # nontrivial factor of odd composite n with no factor <= 1e5;
    # returns 0 if every retry fails (never observed below 2**63)
    cdef u64 retry, c, y, x, ys, q, g, r, k, i, lim, diff
    for retry in range(64):
        c = 1 + retry
        y = 2 + retry
        g = 1; r = 1; q = 1
        x = 0; ys = 0
        while g == 1:
            x = y
            for i in range(r):
                y = (wl_mulmod(y, y, n) + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                lim = r - k
                if lim > 128:
                    lim = 128
                for i in range(lim):
                    y = (wl_mulmod(y, y, n) + c) % n
                    diff = x - y if x > y else y - x
                    q = wl_mulmod(q, diff, n)
                g = _gcd(q, n)
                k += 128
            r <<= 1
        if g == n:
            # backtrack one step at a time from the last good point
            g = 1
            while g == 1:
                ys = (wl_mulmod(ys, ys, n) + c) % n
                diff = x - ys if x > ys else ys - x
                g = _gcd(diff, n)
        if g != n:
            return g
    return 0


cdef int _factor_big(u64 n, u64* fp, u64* fe, int cnt) except -1:
    # push the prime factorization of n (no factor <= 1e5) onto fp/fe
    cdef u64 stack[64]
    cdef int sp = 1
    cdef u64 m, d
    cdef int k
    cdef bint seen
    stack[0] = n
    while sp:
        sp -= 1
        m = stack[sp]
        if _is_prime(m):
            seen = False
            for k in range(cnt):
                if fp[k] == m:
                    fe[k] += 1
                    seen = True
                    break
            if not seen:
                fp[cnt] = m
                fe[cnt] = 1
                cnt += 1
            continue
        d = _brent_rho(m)
        if d == 0 or d == m:
            raise RuntimeError(f"rho failed to split {m}")
        stack[sp] = d
        sp += 1
        stack[sp] = m // d
        sp += 1
    return cnt


cdef u64 _digit_sum(u64 x, u64 p) noexcept nogil:
    cdef u64 s = 0
    while x:
        s += x % p
        x //= p
    return s


cdef u64 _unit_range_plain(u64 lo, u64 hi, u64 p, u64 q) noexcept nogil:
    # product of i in [lo, hi] with p not dividing i, mod q
    cdef u64 prod = 1 % q
    cdef u64 i = lo
    cdef u64 nxt = (lo // p) * p
    if nxt < lo:
        nxt += p
    while i <= hi:
        if i == nxt:
            nxt += p
        else:
            prod = wl_mulmod(prod, i, q)
        i += 1
    return prod


cdef u64 _unit_range_mont(u64 lo, u64 hi, u64 p, u64 q, u64 key, u64 r1) noexcept nogil:
    # Montgomery variant for odd q; all i < q.  Four accumulator chains
    # hide the multiply latency; each montmul defers one 2^-64 factor,
    # repaid at the end with a single powmod of r1 = 2^64 mod q.
    cdef u64 a0 = 1, a1 = 1, a2 = 1, a3 = 1
    cdef u64 cnt = 0
    cdef u64 run_lo = lo, run_hi, nxt, i
    nxt = (lo // p) * p
    if nxt < lo:
        nxt += p
    while run_lo <= hi:
        if run_lo == nxt:
            nxt += p
            run_lo += 1
            continue
        run_hi = nxt - 1
        if run_hi > hi:
            run_hi = hi
        i = run_lo
        while i + 3 <= run_hi:
            a0 = wl_montmul(a0, i, q, key)
            a1 = wl_montmul(a1, i + 1, q, key)
            a2 = wl_montmul(a2, i + 2, q, key)
            a3 = wl_montmul(a3, i + 3, q, key)
            i += 4
        while i <= run_hi:
            a0 = wl_montmul(a0, i, q, key)
            i += 1
        cnt += run_hi - run_lo + 1
        run_lo = run_hi + 1
    a0 = wl_montmul(a0, a1, q, key)
    a2 = wl_montmul(a2, a3, q, key)
    a0 = wl_montmul(a0, a2, q, key)
    return wl_mulmod(a0, _powmod(r1, cnt + 3, q), q)


cdef void _unit_partial3(u64 xa, u64 xb, u64 xc, u64 p, u64 q, u64 key,
                         u64 r1, bint mont, u64* oa, u64* ob, u64* oc) noexcept nogil:
    # partial unit products for three targets < q in one ascending walk
    cdef u64 t[3]
    cdef int order[3]
    cdef u64 res[3]
    cdef int i, j, ti
    cdef u64 tv, x, seg
    cdef u64 prod = 1 % q
    cdef u64 pos = 0
    t[0] = xa; t[1] = xb; t[2] = xc
    order[0] = 0; order[1] = 1; order[2] = 2
    for i in range(2):
        for j in range(2 - i):
            if t[j] > t[j + 1]:
                tv = t[j]; t[j] = t[j + 1]; t[j + 1] = tv
                ti = order[j]; order[j] = order[j + 1]; order[j + 1] = ti
    for i in range(3):
        x = t[i]
        if x > pos:
            if mont and x - pos >= MONT_CUTOFF:
                seg = _unit_range_mont(pos + 1, x, p, q, key, r1)
            else:
                seg = _unit_range_plain(pos + 1, x, p, q)
            prod = wl_mulmod(prod, seg, q)
            pos = x
        res[order[i]] = prod
    oa[0] = res[0]
    ob[0] = res[1]
    oc[0] = res[2]


cdef u64 _binom_mod_pp(u64 N, u64 K, u64 p, u64 e, u64 q) noexcept nogil:
    cdef u64 R = N - K
    cdef u64 v = (_digit_sum(K, p) + _digit_sum(R, p) - _digit_sum(N, p)) // (p - 1)
    cdef bint mont
    cdef u64 key = 0, r1 = 0
    cdef u64 num = 1 % q, den = 1 % q
    cdef u64 blocks = 0
    cdef u64 nj = N, kj = K, rj = R
    cdef u64 pa, pb, pc, unit, pv, i
    if v >= e:
        return 0
    mont = (q & 1) == 1
    if mont:
        key = wl_mont_key(q)
        r1 = wl_r64(q)
    while nj:
        blocks += nj // q + kj // q + rj // q
        _unit_partial3(nj % q, kj % q, rj % q, p, q, key, r1, mont, &pa, &pb, &pc)
        num = wl_mulmod(num, pa, q)
        den = wl_mulmod(den, pb, q)
        den = wl_mulmod(den, pc, q)
        nj //= p
        kj //= p
        rj //= p
    unit = wl_mulmod(num, _inv_mod(den, q), q)
    if (blocks & 1) and not (p == 2 and e >= 3):
        if unit:
            unit = q - unit
    pv = 1
    for i in range(v):
        pv *= p
    return wl_mulmod(pv, unit, q)


def mod_pow(base, exp, m):
    """base**exp mod m for m >= 1; exp must fit in 64 bits."""
    cdef u64 mm = m
    cdef u64 bb = base % m
    cdef u64 ee = exp
    return _powmod(bb, ee, mm)


def is_prime(n):
    """Deterministic Miller-Rabin primality test for 0 <= n < 2**63."""
    if n < 2:
        return False
    return bool(_is_prime(<u64> n))


def factorize(n):
    """Prime factorization of 1 <= n < 2**63, ascending (prime, exp) pairs."""
    cdef u64 m = n
    cdef u64 fp[24]
    cdef u64 fe[24]
    cdef u64 small[3]
    cdef int cnt = 0
    cdef int i, j, wi
    cdef u64 d, e, tv, te
    small[0] = 2; small[1] = 3; small[2] = 5
    for i in range(3):
        d = small[i]
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            fp[cnt] = d; fe[cnt] = e; cnt += 1
    d = 7
    wi = 0
    while d <= WHEEL_LIMIT and d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            fp[cnt] = d; fe[cnt] = e; cnt += 1
        d += _WSTEP[wi]
        wi = (wi + 1) & 7
    if m > 1:
        cnt = _factor_big(m, fp, fe, cnt)
    # cofactor entries may arrive out of order; insertion sort the tail
    for i in range(1, cnt):
        tv = fp[i]; te = fe[i]
        j = i - 1
        while j >= 0 and fp[j] > tv:
            fp[j + 1] = fp[j]; fe[j + 1] = fe[j]
            j -= 1
        fp[j + 1] = tv; fe[j + 1] = te
    out = []
    for i in range(cnt):
        out.append((fp[i], fe[i]))
    return out


def digit_sum(x, p):
    """Sum of the base-p digits of x >= 0."""
    return _digit_sum(<u64> x, <u64> p)


def carry_count(x, y, p):
    """Number of carries when adding x and y in base p."""
    cdef u64 xx = x, yy = y, pp = p
    return (_digit_sum(xx, pp) + _digit_sum(yy, pp) - _digit_sum(xx + yy, pp)) // (pp - 1)


def binom_mod_pp(N, K, p, e):
    """C(N, K) mod p**e for 0 <= K <= N < 2**62 and p**e < 2**63.

    Same contract as the pure kernel: p-part from the base-p carry
    count, unit part from per-level partial factorial products with the
    generalized Wilson block sign (-1, except +1 for p = 2 and e >= 3).
    """
    cdef u64 NN = N, KK = K, pp = p, ee = e
    cdef u64 q = 1
    cdef u64 i, res
    for i in range(ee):
        q *= pp
    with nogil:
        res = _binom_mod_pp(NN, KK, pp, ee, q)
    return res


def w_mod_parts(n, parts):
    """C(2n-1, n-1) mod the product of the given prime powers.

    ``parts`` holds pairwise-distinct primes with exponents, product
    below 2**63; the per-prime-power residues are recombined by CRT.
    """
    cdef u64 N = 2 * n - 1
    cdef u64 K = n - 1
    cdef u64 r = 0, m = 1
    cdef u64 p, e, q, rp, t, i
    for po, eo in parts:
        p = po
        e = eo
        q = 1
        for i in range(e):
            q *= p
        with nogil:
            rp = _binom_mod_pp(N, K, p, e, q)
        if m == 1:
            r = rp
            m = q
        else:
            t = wl_mulmod((rp + q - r % q) % q, _inv_mod(m % q, q), q)
            r = r + m * t
            m = m * q
    return r
