"""Compiled inner loop for the full nonsmooth plant.

Everything here is scalar float64 math under numba so that million-step
fixed-step runs stay fast.  The Python-facing wrappers in plant.py and sim.py
call these kernels; they are the single implementation of the equations of
motion.

Controller codes: 0 none, 1 open-loop sin² profile, 2 coherency feedback,
3 coherency feedback with energy-dependent decay.
Friction modes: 0 exact sgn with Filippov sticking, 1 smoothed tanh(v/eps).
"""

import math

import numpy as np
from numba import njit

CTRL_NONE = 0
CTRL_OPEN_LOOP = 1
CTRL_FEEDBACK = 2
CTRL_FEEDBACK_DECAYED = 3

SGN_EXACT = 0
SGN_SMOOTH = 1


@njit(cache=True)
def magnet_torque(phi, a, b):
    # torque per unit current of the Gaussian-well magnet potential
    return (2.0 * a / b) * math.exp(-phi * phi / b) * phi


@njit(cache=True)
def accel_nonfriction(phi, v, phi_o, v_o, cur, Omega, beta, alpha, a, b, J):
    """Angular acceleration of one pendulum excluding its dry-friction term."""
    return (
        -Omega * Omega * phi
        - 2.0 * Omega * alpha * (v - v_o)
        - Omega * Omega * (beta * (phi - phi_o) - phi * phi * phi / 6.0)
        + (cur / J) * magnet_torque(phi, a, b)
    )


@njit(cache=True)
def _friction_accel(v, acc, thr, sgn_mode, sgn_eps):
    # Coulomb term 2*Omega*zeta*sgn(v); at exact rest the Filippov projection
    # caps it at the available torque so motion starts with the correct sign.
    if sgn_mode == SGN_SMOOTH:
        return thr * math.tanh(v / sgn_eps)
    if v > 0.0:
        return thr
    if v < 0.0:
        return -thr
    if acc > thr:
        return thr
    if acc < -thr:
        return -thr
    return acc


@njit(cache=True)
def rhs_full(
    phi1, v1, phi2, v2, stuck1, stuck2, i1, i2,
    Omega, beta, zeta1, zeta2, alpha, a, b, J, sgn_mode, sgn_eps,
):
    """State derivative (dphi1, dv1, dphi2, dv2) of the full plant."""
    if stuck1:
        dphi1 = 0.0
        dv1 = 0.0
    else:
        acc1 = accel_nonfriction(phi1, v1, phi2, v2, i1, Omega, beta, alpha, a, b, J)
        dv1 = acc1 - _friction_accel(v1, acc1, 2.0 * Omega * zeta1, sgn_mode, sgn_eps)
        dphi1 = v1
    if stuck2:
        dphi2 = 0.0
        dv2 = 0.0
    else:
        acc2 = accel_nonfriction(phi2, v2, phi1, v1, i2, Omega, beta, alpha, a, b, J)
        dv2 = acc2 - _friction_accel(v2, acc2, 2.0 * Omega * zeta2, sgn_mode, sgn_eps)
        dphi2 = v2
    return dphi1, dv1, dphi2, dv2


@njit(cache=True)
def stick_update(
    phi1, v1, phi2, v2, stuck1, stuck2, i1, i2,
    Omega, beta, zeta1, zeta2, alpha, a, b, J, v_tol,
):
    """Filippov stick/release transition applied after an accepted step.

    A pendulum sticks when nearly at rest and the non-friction torque per
    inertia cannot overcome the static threshold 2*Omega*zeta; it releases as
    soon as that torque exceeds the threshold.  Returns (v1, v2, stuck1,
    stuck2) with stuck velocities pinned to exactly zero.
    """
    if zeta1 > 0.0:
        acc1 = accel_nonfriction(phi1, v1, phi2, v2, i1, Omega, beta, alpha, a, b, J)
        thr1 = 2.0 * Omega * zeta1
        if stuck1:
            if abs(acc1) > thr1:
                stuck1 = False
        elif abs(v1) < v_tol and abs(acc1) <= thr1:
            stuck1 = True
            v1 = 0.0
    if zeta2 > 0.0:
        acc2 = accel_nonfriction(phi2, v2, phi1, v1, i2, Omega, beta, alpha, a, b, J)
        thr2 = 2.0 * Omega * zeta2
        if stuck2:
            if abs(acc2) > thr2:
                stuck2 = False
        elif abs(v2) < v_tol and abs(acc2) <= thr2:
            stuck2 = True
            v2 = 0.0
    return v1, v2, stuck1, stuck2


@njit(cache=True)
def _controller_currents(
    t, phi1, v1, phi2, v2, q_prev,
    ctrl_code, cA, cB, ctk, cpol, chold, ci0, ceta,
    Omega, eps_e,
):
    """Evaluate the active controller; returns (i1, i2, q_used)."""
    if ctrl_code == CTRL_OPEN_LOOP:
        if chold != 0 and t > ctk:
            i1 = cA
        else:
            s = math.sin(math.pi * t / ctk)
            i1 = cA + cB * s * s
        i2 = -i1 if cpol != 0 else 0.0
        return i1, i2, q_prev
    if ctrl_code == CTRL_FEEDBACK or ctrl_code == CTRL_FEEDBACK_DECAYED:
        om2 = Omega * Omega
        e11 = 0.5 * (v1 * v1 + om2 * phi1 * phi1)
        e22 = 0.5 * (v2 * v2 + om2 * phi2 * phi2)
        if e11 * e22 > eps_e * eps_e:
            q = 0.5 * (v1 * v2 + om2 * phi1 * phi2) / math.sqrt(e11 * e22)
            if q > 1.0:
                q = 1.0
            elif q < -1.0:
                q = -1.0
        else:
            q = q_prev
        gain = ci0
        if ctrl_code == CTRL_FEEDBACK_DECAYED and ceta > 0.0:
            gain = ci0 * (1.0 - math.exp(-ceta * (e11 + e22)))
        return -gain * q, gain * q, q
    return 0.0, 0.0, q_prev


@njit(cache=True)
def integrate_full_kernel(
    y0, stuck0, h, n_steps, out_every,
    Omega, beta, zeta1, zeta2, alpha, a, b, J,
    ctrl_code, cA, cB, ctk, cpol, chold, ci0, ceta, avg_window,
    sat_limit, v_tol, sgn_mode, sgn_eps, eps_e,
):
    """Fixed-step RK4 over the full plant with per-step stick-slip handling.

    Currents are recomputed at the start of every step and held across the
    four stages.  Output samples are recorded every `out_every` steps.
    Returns (times, states, stuck, currents, n_saturated, n_valid) where
    n_valid < n_samples signals a non-finite state abort.
    """
    n_samples = n_steps // out_every + 1
    times = np.empty(n_samples)
    states = np.empty((n_samples, 4))
    stuck_log = np.zeros((n_samples, 2), dtype=np.bool_)
    currents = np.empty((n_samples, 2))

    phi1, v1, phi2, v2 = y0[0], y0[1], y0[2], y0[3]
    stuck1 = stuck0[0]
    stuck2 = stuck0[1]
    n_sat = 0

    # moving-average buffer for the feedback coherency signal
    use_avg = avg_window > 1 and (ctrl_code == CTRL_FEEDBACK or ctrl_code == CTRL_FEEDBACK_DECAYED)
    q_buf = np.zeros(max(avg_window, 1))
    q_len = 0
    q_pos = 0
    q_sum = 0.0

    q_prev = 0.0
    om2 = Omega * Omega
    e11 = 0.5 * (v1 * v1 + om2 * phi1 * phi1)
    e22 = 0.5 * (v2 * v2 + om2 * phi2 * phi2)
    if e11 * e22 > eps_e * eps_e:
        q_prev = 0.5 * (v1 * v2 + om2 * phi1 * phi2) / math.sqrt(e11 * e22)

    i1, i2, q_prev = _controller_currents(
        0.0, phi1, v1, phi2, v2, q_prev,
        ctrl_code, cA, cB, ctk, cpol, chold, ci0, ceta, Omega, eps_e,
    )
    times[0] = 0.0
    states[0, 0] = phi1
    states[0, 1] = v1
    states[0, 2] = phi2
    states[0, 3] = v2
    stuck_log[0, 0] = stuck1
    stuck_log[0, 1] = stuck2
    currents[0, 0] = i1
    currents[0, 1] = i2
    n_valid = 1

    for step in range(n_steps):
        t = step * h
        i1, i2, q_raw = _controller_currents(
            t, phi1, v1, phi2, v2, q_prev,
            ctrl_code, cA, cB, ctk, cpol, chold, ci0, ceta, Omega, eps_e,
        )
        q_prev = q_raw
        if use_avg:
            if q_len < avg_window:
                q_buf[q_len] = q_raw
                q_sum += q_raw
                q_len += 1
            else:
                q_sum += q_raw - q_buf[q_pos]
                q_buf[q_pos] = q_raw
                q_pos = (q_pos + 1) % avg_window
            q_mean = q_sum / q_len
            gain = ci0
            if ctrl_code == CTRL_FEEDBACK_DECAYED and ceta > 0.0:
                om2 = Omega * Omega
                e_tot = 0.5 * (v1 * v1 + v2 * v2 + om2 * (phi1 * phi1 + phi2 * phi2))
                gain = ci0 * (1.0 - math.exp(-ceta * e_tot))
            i1 = -gain * q_mean
            i2 = gain * q_mean
        if i1 > sat_limit:
            i1 = sat_limit
            n_sat += 1
        elif i1 < -sat_limit:
            i1 = -sat_limit
            n_sat += 1
        if i2 > sat_limit:
            i2 = sat_limit
            n_sat += 1
        elif i2 < -sat_limit:
            i2 = -sat_limit
            n_sat += 1

        k1 = rhs_full(phi1, v1, phi2, v2, stuck1, stuck2, i1, i2,
                      Omega, beta, zeta1, zeta2, alpha, a, b, J, sgn_mode, sgn_eps)
        k2 = rhs_full(phi1 + 0.5 * h * k1[0], v1 + 0.5 * h * k1[1],
                      phi2 + 0.5 * h * k1[2], v2 + 0.5 * h * k1[3],
                      stuck1, stuck2, i1, i2,
                      Omega, beta, zeta1, zeta2, alpha, a, b, J, sgn_mode, sgn_eps)
        k3 = rhs_full(phi1 + 0.5 * h * k2[0], v1 + 0.5 * h * k2[1],
                      phi2 + 0.5 * h * k2[2], v2 + 0.5 * h * k2[3],
                      stuck1, stuck2, i1, i2,
                      Omega, beta, zeta1, zeta2, alpha, a, b, J, sgn_mode, sgn_eps)
        k4 = rhs_full(phi1 + h * k3[0], v1 + h * k3[1],
                      phi2 + h * k3[2], v2 + h * k3[3],
                      stuck1, stuck2, i1, i2,
                      Omega, beta, zeta1, zeta2, alpha, a, b, J, sgn_mode, sgn_eps)
        phi1 += h * (k1[0] + 2.0 * (k2[0] + k3[0]) + k4[0]) / 6.0
        v1 += h * (k1[1] + 2.0 * (k2[1] + k3[1]) + k4[1]) / 6.0
        phi2 += h * (k1[2] + 2.0 * (k2[2] + k3[2]) + k4[2]) / 6.0
        v2 += h * (k1[3] + 2.0 * (k2[3] + k3[3]) + k4[3]) / 6.0

        if sgn_mode == SGN_EXACT:
            v1, v2, stuck1, stuck2 = stick_update(
                phi1, v1, phi2, v2, stuck1, stuck2, i1, i2,
                Omega, beta, zeta1, zeta2, alpha, a, b, J, v_tol,
            )

        if not (math.isfinite(phi1) and math.isfinite(v1)
                and math.isfinite(phi2) and math.isfinite(v2)):
            return times, states, stuck_log, currents, n_sat, n_valid

        if (step + 1) % out_every == 0:
            k = (step + 1) // out_every
            io1, io2, _ = _controller_currents(
                (step + 1) * h, phi1, v1, phi2, v2, q_prev,
                ctrl_code, cA, cB, ctk, cpol, chold, ci0, ceta, Omega, eps_e,
            )
            times[k] = (step + 1) * h
            states[k, 0] = phi1
            states[k, 1] = v1
            states[k, 2] = phi2
            states[k, 3] = v2
            stuck_log[k, 0] = stuck1
            stuck_log[k, 1] = stuck2
            currents[k, 0] = min(max(io1, -sat_limit), sat_limit)
            currents[k, 1] = min(max(io2, -sat_limit), sat_limit)
            n_valid = k + 1

    return times, states, stuck_log, currents, n_sat, n_valid
