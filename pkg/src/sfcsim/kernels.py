"""Numeric kernels for the hand-rolled networks (MLP, gated recurrent cell,
causal dilated convolution).

Every kernel is written once, in the numba-compatible subset of numpy, and is
JIT-compiled with ``numba.njit`` unless the environment variable
``SFCSIM_NUMBA=0`` selects the pure-numpy fallback path. The uncompiled
callables stay reachable through ``PY_FUNCS`` so tests and
``benchmarks/bench_kernels.py`` can compare both paths on identical inputs.

All kernels take C-contiguous float64 arrays. Recurrent inputs are time-major
``(T, N, I)`` so per-step slices are contiguous; convolution inputs are
batch-major ``(N, T, C)``.
"""

from __future__ import annotations

import os

import numpy as np


def numba_requested() -> bool:
    return os.environ.get("SFCSIM_NUMBA", "1").strip().lower() not in ("0", "false", "off")


def dense_forward(x, W, b):
    """Affine layer: (N, I) @ (I, O) + (O,) -> (N, O)."""
    return np.dot(x, W) + b


def dense_relu_forward(x, W, b):
    """Affine layer with rectifier."""
    return np.maximum(np.dot(x, W) + b, 0.0)


def linear_backward(x, W, dy):
    """Gradients of an affine layer: returns (dW, db, dx)."""
    dW = np.dot(x.T, dy)
    db = np.sum(dy, axis=0)
    dx = np.dot(dy, W.T)
    return dW, db, dx


def lstm_forward(xT, Wx, Wh, b):
    """Single gated recurrent cell unrolled over a window.

    xT: (T, N, I) time-major inputs. Gate order inside the (I, 4H) / (H, 4H)
    weights is input, forget, output, candidate. Returns the hidden/cell
    state histories (with the zero initial state at index 0) and the gate
    activations needed by the backward pass.
    """
    T, N, _ = xT.shape
    H = Wh.shape[0]
    hs = np.zeros((T + 1, N, H))
    cs = np.zeros((T + 1, N, H))
    gi = np.zeros((T, N, H))
    gf = np.zeros((T, N, H))
    go = np.zeros((T, N, H))
    gg = np.zeros((T, N, H))
    for t in range(T):
        a = np.dot(xT[t], Wx) + np.dot(hs[t], Wh) + b
        # clamped logistic: overflow-free in numpy and supported by numba
        s = 1.0 / (1.0 + np.exp(-np.minimum(np.maximum(a[:, :3 * H], -60.0), 60.0)))
        i = s[:, :H]
        f = s[:, H:2 * H]
        o = s[:, 2 * H:]
        g = np.tanh(a[:, 3 * H:])
        c = f * cs[t] + i * g
        gi[t] = i
        gf[t] = f
        go[t] = o
        gg[t] = g
        cs[t + 1] = c
        hs[t + 1] = o * np.tanh(c)
    return hs, cs, gi, gf, go, gg


def lstm_backward(xT, Wx, Wh, hs, cs, gi, gf, go, gg, dh_last):
    """Backpropagation through time for :func:`lstm_forward`.

    dh_last is the loss gradient w.r.t. the final hidden state. Input
    gradients are not needed (windows are data), so only parameter gradients
    are returned.
    """
    T, N, I = xT.shape
    H = Wh.shape[0]
    dWx = np.zeros((I, 4 * H))
    dWh = np.zeros((H, 4 * H))
    db = np.zeros(4 * H)
    dh = dh_last.copy()
    dc = np.zeros((N, H))
    for t in range(T - 1, -1, -1):
        i = gi[t]
        f = gf[t]
        o = go[t]
        g = gg[t]
        tc = np.tanh(cs[t + 1])
        do = dh * tc
        dc = dc + dh * o * (1.0 - tc * tc)
        di = dc * g
        dg = dc * i
        df = dc * cs[t]
        da = np.zeros((N, 4 * H))
        da[:, :H] = di * i * (1.0 - i)
        da[:, H:2 * H] = df * f * (1.0 - f)
        da[:, 2 * H:3 * H] = do * o * (1.0 - o)
        da[:, 3 * H:] = dg * (1.0 - g * g)
        dWx += np.dot(xT[t].T, da)
        dWh += np.dot(hs[t].T, da)
        db += np.sum(da, axis=0)
        dh = np.dot(da, Wh.T)
        dc = dc * f
    return dWx, dWh, db


def causal_conv_forward(x, W1, W2, b, dilation):
    """Causal dilated conv layer, kernel size 2, rectifier activation.

    x: (N, T, Ci). Output h[n, t] = relu(x[n, t-dilation] @ W1 +
    x[n, t] @ W2 + b) with zero padding for t < dilation.
    """
    N, T, Ci = x.shape
    Co = W2.shape[1]
    xs = np.zeros((N, T, Ci))
    xs[:, dilation:, :] = x[:, :T - dilation, :]
    a = np.dot(x.reshape(N * T, Ci), W2) + np.dot(xs.reshape(N * T, Ci), W1) + b
    h = np.maximum(a, 0.0)
    return h.reshape(N, T, Co)


def causal_conv_backward(x, W1, W2, h, dh, dilation):
    """Gradients of :func:`causal_conv_forward`; returns (dW1, dW2, db, dx)."""
    N, T, Ci = x.shape
    Co = W2.shape[1]
    xs = np.zeros((N, T, Ci))
    xs[:, dilation:, :] = x[:, :T - dilation, :]
    da = (dh * (h > 0.0)).reshape(N * T, Co)
    xf = x.reshape(N * T, Ci)
    xsf = xs.reshape(N * T, Ci)
    dW2 = np.dot(xf.T, da)
    dW1 = np.dot(xsf.T, da)
    db = np.sum(da, axis=0)
    dx = np.dot(da, W2.T).reshape(N, T, Ci)
    dxs = np.dot(da, W1.T).reshape(N, T, Ci)
    dx[:, :T - dilation, :] += dxs[:, dilation:, :]
    return dW1, dW2, db, dx


PY_FUNCS = {
    "dense_forward": dense_forward,
    "dense_relu_forward": dense_relu_forward,
    "linear_backward": linear_backward,
    "lstm_forward": lstm_forward,
    "lstm_backward": lstm_backward,
    "causal_conv_forward": causal_conv_forward,
    "causal_conv_backward": causal_conv_backward,
}

NUMBA_ENABLED = False
if numba_requested():
    try:
        import numba
    except ImportError:  # pragma: no cover - numba is a hard dep, but stay usable
        numba = None
    if numba is not None:
        NUMBA_ENABLED = True
        _jit = numba.njit(cache=True, fastmath=False)
        dense_forward = _jit(PY_FUNCS["dense_forward"])
        dense_relu_forward = _jit(PY_FUNCS["dense_relu_forward"])
        linear_backward = _jit(PY_FUNCS["linear_backward"])
        lstm_forward = _jit(PY_FUNCS["lstm_forward"])
        lstm_backward = _jit(PY_FUNCS["lstm_backward"])
        causal_conv_forward = _jit(PY_FUNCS["causal_conv_forward"])
        causal_conv_backward = _jit(PY_FUNCS["causal_conv_backward"])

ACTIVE_FUNCS = {
    "dense_forward": dense_forward,
    "dense_relu_forward": dense_relu_forward,
    "linear_backward": linear_backward,
    "lstm_forward": lstm_forward,
    "lstm_backward": lstm_backward,
    "causal_conv_forward": causal_conv_forward,
    "causal_conv_backward": causal_conv_backward,
}


def backend_name() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"
