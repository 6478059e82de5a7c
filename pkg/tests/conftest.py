import numpy as np

from paulifish import channels, linop, qfi


def block_route_sld(n, r, lam, m):
    """Score operator of the correlated protocol state assembled piecewise:
    a closed 2x2 solve per two-level block, embedded and summed.

    Built from primitives only, so it is an independent route against the
    closed-form and eigendecomposition paths.
    """
    blocks = channels.post_channel_blocks(channels.prepared_state_blocks(n, r), lam, m)
    dscale = -2.0 * m * (1.0 - 2.0 * lam) ** (m - 1)
    big_n = 2**n - 1
    parts, rhos = [], []
    for b in blocks:
        off = 1j * b.offdiag_weight * b.offdiag_scale
        doff = 1j * b.offdiag_weight * dscale
        a = np.array([[b.diag_weight, off], [-off, b.diag_weight]])
        da = np.array([[0.0, doff], [-doff, 0.0]])
        res = qfi.sld_2x2(a, da)
        parts.append(
            qfi.SldResult(L=linop.embed_two_level(res.L, b.x, big_n - b.x, 2**n), H=res.H)
        )
        rhos.append(linop.embed_two_level(a, b.x, big_n - b.x, 2**n))
    return qfi.sld_block_sum(parts, rhos=rhos)
