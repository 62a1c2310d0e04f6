//! Classical fourth-order Runge–Kutta step shared by every integrator.

/// One RK4 step of size `h` for `ẏ = f(t, y)`. `f` writes the derivative
/// into its third argument and may fail.
pub fn rk4_step<E>(
    f: &mut impl FnMut(f64, &[f64], &mut [f64]) -> Result<(), E>,
    t: f64,
    y: &[f64],
    h: f64,
) -> Result<Vec<f64>, E> {
    let n = y.len();
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut tmp = vec![0.0; n];
    f(t, y, &mut k1)?;
    for i in 0..n {
        tmp[i] = y[i] + 0.5 * h * k1[i];
    }
    f(t + 0.5 * h, &tmp, &mut k2)?;
    for i in 0..n {
        tmp[i] = y[i] + 0.5 * h * k2[i];
    }
    f(t + 0.5 * h, &tmp, &mut k3)?;
    for i in 0..n {
        tmp[i] = y[i] + h * k3[i];
    }
    f(t + h, &tmp, &mut k4)?;
    Ok((0..n)
        .map(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect())
}

/// Integrates from `t0` over `span` with `steps` equal steps.
pub fn rk4_fixed<E>(
    mut f: impl FnMut(f64, &[f64], &mut [f64]) -> Result<(), E>,
    t0: f64,
    y0: &[f64],
    span: f64,
    steps: usize,
) -> Result<Vec<f64>, E> {
    let h = span / steps as f64;
    let mut y = y0.to_vec();
    for i in 0..steps {
        y = rk4_step(&mut f, t0 + i as f64 * h, &y, h)?;
    }
    Ok(y)
}
