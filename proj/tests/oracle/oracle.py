#!/usr/bin/env python3
"""Independent numpy oracle used to freeze expected values for the C++ tests.

Nothing here imports or calls the library. Phantom images for the corpus
checks are either synthesized here (same pinned algorithm) or read from PGM
files produced by the CLI, see --phantom-dir.
"""
import argparse
import hashlib
import math
import os
import sys

import numpy as np

MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def uniform(self):
        return (self.next() >> 11) * 2.0 ** -53

    def uniform_open0(self):
        return ((self.next() >> 11) + 1) * 2.0 ** -53

    def normal_pair(self):
        u1 = self.uniform_open0()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        return r * math.cos(2 * math.pi * u2), r * math.sin(2 * math.pi * u2)


def random_image(rng, w, h):
    return np.array([rng.next() >> 56 for _ in range(w * h)], dtype=np.int64).reshape(h, w)


def moments(pix, beta_norm="sigma"):
    x = np.asarray(pix, dtype=np.float64).ravel() / 255.0
    m = x.mean()
    d = x - m
    var = np.mean(d * d)
    s = math.sqrt(var)
    if s == 0.0:
        return dict(mean=m, sigma=0.0, mm=m, beta=0.0, clamped=False)
    mu4 = np.mean(d ** 4)
    mu6 = np.mean(d ** 6)
    ek = mu4 / var ** 2 - 3.0
    beta = mu6 / s if beta_norm == "sigma" else mu6 / s ** 6
    arg = m + beta if ek < 0 else m - beta
    clamped = arg < 0 or arg > 1
    arg = min(max(arg, 0.0), 1.0)
    return dict(mean=m, sigma=s, ek=ek, mu6=mu6, beta=beta, mm=math.sqrt(arg), clamped=clamped)


def round_half_away(v):
    return math.floor(v + 0.5) if v >= 0 else -math.floor(-v + 0.5)


def segment_lut(hist, lo, hi, lut):
    counts = hist[lo:hi + 1]
    total = int(counts.sum())
    occupied = np.nonzero(counts)[0]
    if total == 0 or len(occupied) == 1:
        for v in range(lo, hi + 1):
            lut[v] = v
        return
    cmin = int(counts[occupied[0]])
    cum = 0
    for v in range(lo, hi + 1):
        cum += int(hist[v])
        num = max(cum - cmin, 0)
        lut[v] = lo + round_half_away((hi - lo) * num / (total - cmin))


def equalize(pix, method, beta_norm="sigma"):
    hist = np.bincount(pix.ravel(), minlength=256)
    lut = [0] * 256
    if method == "global":
        segment_lut(hist, 0, 255, lut)
        T = None
    else:
        if method == "bhe":
            T = round_half_away(255.0 * (pix.mean() / 255.0))
        else:
            T = min(max(round_half_away(255.0 * moments(pix, beta_norm)["mm"]), 1), 254)
        segment_lut(hist, 0, T, lut)
        if T < 255:
            segment_lut(hist, T + 1, 255, lut)
    out = np.array(lut, dtype=np.int64)[pix]
    return out, lut, T


def rmse(x, y):
    return math.sqrt(np.mean((x.astype(np.float64) - y) ** 2))


def ammbe(x, y):
    return abs(moments(x)["mm"] - moments(y)["mm"])


def dft_norm(x):
    n = len(x)
    k = np.arange(n)
    return np.array([np.sum(x * np.exp(-2j * np.pi * f * k / n)) for f in range(n)]) / n


def st_direct_freq(x):
    n = len(x)
    X = dft_norm(np.asarray(x, dtype=np.float64))
    ms = np.arange(-(n // 2), (n + 1) // 2)
    j = np.arange(n)
    S = np.zeros((n, n), dtype=complex)
    S[:, 0] = np.mean(x)
    for v in range(1, n):
        sv = v if v <= n // 2 else v - n
        g = np.exp(-2 * np.pi ** 2 * ms ** 2 / sv ** 2)
        coef = X[(ms + v) % n] * g
        S[:, v] = np.exp(2j * np.pi * np.outer(j, ms) / n) @ coef
    return S


def st_direct_time(x):
    n = len(x)
    x = np.asarray(x, dtype=np.float64)
    S = np.zeros((n, n), dtype=complex)
    S[:, 0] = x.mean()
    k = np.arange(n)
    for v in range(1, n):
        sv = v if v <= n // 2 else v - n
        f = abs(sv) / n
        for j in range(n):
            d = np.abs(j - k)
            d = np.minimum(d, n - d)
            w = f / math.sqrt(2 * math.pi) * np.exp(-(d ** 2) * f * f / 2)
            S[j, v] = np.sum(x * w * np.exp(-2j * np.pi * v * k / n))
    return S


def fft2_radix2_inverse(a):
    # Unnormalized inverse DFT; numpy's ifft2 scales by 1/(h*w).
    return np.fft.ifft2(a) * a.size


def fractal(w, h, hurst, seed):
    rng = SplitMix64(seed)
    spec = np.zeros((h, w), dtype=complex)
    for ky in range(h):
        sy = ky if ky <= h // 2 else ky - h
        for kx in range(w):
            sx = kx if kx <= w // 2 else kx - w
            re, im = rng.normal_pair()
            k2 = sx * sx + sy * sy
            if k2 == 0:
                continue
            amp = k2 ** (-(hurst + 1.0) / 2.0)
            spec[ky, kx] = complex(re * amp, im * amp)
    field = fft2_radix2_inverse(spec).real
    lo, hi = field.min(), field.max()
    return np.array([[round_half_away(255.0 * (v - lo) / (hi - lo)) for v in row] for row in field],
                    dtype=np.int64)


def read_pgm(path):
    with open(path, "rb") as fh:
        data = fh.read()
    parts = data.split(maxsplit=4)
    w, h = int(parts[1]), int(parts[2])
    payload = data[len(data) - w * h:]
    return np.frombuffer(payload, dtype=np.uint8).astype(np.int64).reshape(h, w)


def analyze_rows(pix, enhancement="hkmdhe", mean_removal=True):
    if enhancement != "none":
        pix, _, _ = equalize(pix, enhancement)
    h, w = pix.shape
    agg = np.zeros((w, w))
    mats = []
    for r in range(h):
        x = pix[r].astype(np.float64) / 255.0
        if mean_removal:
            x = x - x.mean()
        a = np.abs(st_direct_freq(x))
        mats.append(a)
        agg += a
    agg /= h
    tm = agg.mean(axis=0)
    dom = 1 + int(np.argmax(tm[1:w // 2 + 1]))
    peak = agg[:, dom].max()
    row_peaks = np.array([m[:, dom].max() for m in mats])
    return dom, peak, row_peaks.mean(), row_peaks.std()


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--phantom-dir", help="directory holding fractal_s<seed>_h<H>.pgm from the CLI")
    ap.add_argument("--skip-slow", action="store_true")
    args = ap.parse_args()
    np.set_printoptions(precision=17)

    print("== moments")
    ramp = np.arange(256).reshape(1, 256)
    mr = moments(ramp)
    print("ramp", {k: repr(v) for k, v in mr.items()})
    half = np.array([[0, 255], [0, 255]])
    print("half", {k: repr(v) for k, v in moments(half).items()})
    const = np.full((2, 2), 128)
    print("ammbe half/const", repr(ammbe(half, const)))

    rng = SplitMix64(3)
    a = random_image(rng, 32, 32)
    b = random_image(rng, 32, 32)
    print("random pair seed3 first pixels", a.ravel()[:4], b.ravel()[:4])
    print("random pair seed3 mm", repr(moments(a)["mm"]), repr(moments(b)["mm"]))
    print("random pair seed3 ammbe", repr(ammbe(a, b)))

    print("== metrics")
    x = np.array([[245, 255]])
    y = np.array([[255, 255]])
    r = rmse(x, y)
    print("rmse", repr(r), "psnr", repr(20 * math.log10(255 / r)))

    print("== st")
    n = 16
    cosx = np.cos(2 * np.pi * 2 * np.arange(n) / n)
    S = st_direct_freq(cosx)
    print("cos voice2 |S| min/max", np.abs(S[:, 2]).min(), np.abs(S[:, 2]).max())
    for n in (8, 16, 32, 64):
        S = st_direct_freq(np.full(n, 3.0))
        print("const", n, "max nondc/|c|", np.abs(S[:, 1:]).max() / 3.0, "bound", math.exp(-2 * math.pi ** 2))

    if not args.skip_slow:
        n = 256
        cos256 = np.cos(2 * np.pi * 2 * np.arange(n) / 16)
        g = np.array([128 + round_half_away(100 * math.cos(2 * math.pi * j / 16)) for j in range(n)]) / 255.0
        g = g - g.mean()
        for name, sig in (("cosine", cos256), ("grating-row", g)):
            Sf = st_direct_freq(sig)
            St = st_direct_time(sig)
            band = slice(4, n // 8 + 1)
            diff = np.abs(Sf[:, band] - St[:, band])
            print(name, "direct_time vs freq, voices 4..N/8: max abs diff", diff.max(),
                  "per-voice max", [float("%.3g" % d) for d in diff.max(axis=0)])

    print("== enhance")
    _, lut, T = equalize(np.array([[0, 0], [0, 255]]), "global")
    print("global [0,0,0,255] lut0 lut255", lut[0], lut[255])
    out, lut, T = equalize(half, "hkmdhe")
    print("hkmdhe half T", T, "fixed point", bool((out == half).all()))
    out, lut, T = equalize(ramp, "bhe")
    print("bhe ramp T", T, "max dev", max(abs(lut[v] - v) for v in range(256)))

    print("== grating pipeline")
    for period in (4, 8, 16):
        gr = np.array([[128 + round_half_away(100 * math.cos(2 * math.pi * j / period)) for j in range(64)]] * 64)
        print("grating period", period, "analysis", analyze_rows(gr, "none"))
    for amp in (50, 100):
        gr = np.array([[128 + round_half_away(amp * math.cos(2 * math.pi * j / 8)) for j in range(64)]] * 8)
        print("grating amp", amp, "peak", repr(analyze_rows(gr, "none")[1]))

    def phantom(seed, hurst, size=64):
        if args.phantom_dir:
            p = os.path.join(args.phantom_dir, "fractal_s%d_h%.1f.pgm" % (seed, hurst))
            img = read_pgm(p)
            own = fractal(size, size, hurst, seed)
            mism = int((own != img).sum())
            if mism:
                print("  note: numpy fractal differs from CLI phantom in", mism, "pixels", p)
            return img
        return fractal(size, size, hurst, seed)

    print("== fractal seed 11 H 0.5 64x64")
    f11 = phantom(11, 0.5)
    enc = b"P5\n64 64\n255\n" + f11.astype(np.uint8).tobytes()
    print("phantom sha256", hashlib.sha256(enc).hexdigest(), "min/max", f11.min(), f11.max())
    out, lut, T = equalize(f11, "hkmdhe")
    enc = b"P5\n64 64\n255\n" + out.astype(np.uint8).tobytes()
    print("hkmdhe T", T, "output sha256", hashlib.sha256(enc).hexdigest())

    print("== other phantom digests")
    gr = np.array([[128 + round_half_away(100 * math.cos(2 * math.pi * j / 8)) for j in range(64)]] * 64)
    print("grating 64x64 p8 a100 o128 sha256", hashlib.sha256(b"P5\n64 64\n255\n" + gr.astype(np.uint8).tobytes()).hexdigest())
    rng = SplitMix64(5)
    tl = np.array([255 if rng.next() >> 63 else 0 for _ in range(64 * 32)], dtype=np.uint8)
    print("two-level 64x32 seed5 sha256", hashlib.sha256(b"P5\n64 32\n255\n" + tl.tobytes()).hexdigest())

    print("== brightness corpus (seeds 1..30, H cycles 0.2/0.5/0.8)")
    hs = (0.2, 0.5, 0.8)
    am_hk, am_ge = [], []
    for s in range(1, 31):
        img = phantom(s, hs[(s - 1) % 3])
        am_hk.append(ammbe(img, equalize(img, "hkmdhe")[0]))
        am_ge.append(ammbe(img, equalize(img, "global")[0]))
    print("mean ammbe hkmdhe", repr(float(np.mean(am_hk))), "global", repr(float(np.mean(am_ge))),
          "margin", repr(float(np.mean(am_ge) - np.mean(am_hk))))

    if not args.skip_slow:
        print("== roughness trend (seeds 1..10)")
        for hurst in hs:
            peaks = []
            for s in range(1, 11):
                peaks.append(analyze_rows(phantom(s, hurst))[1])
            print("H", hurst, "mean peak", repr(float(np.mean(peaks))))


if __name__ == "__main__":
    sys.exit(main())
