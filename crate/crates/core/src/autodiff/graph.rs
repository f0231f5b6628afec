//! Reverse-mode tape over vector/matrix values.
//!
//! Values are computed eagerly as nodes are recorded; `backward` replays the
//! tape once in reverse creation order. Matrices are row-major.

use crate::error::{Error, Result};

use super::params::{ParamId, ParamStore};

/// Handle to a node on a [`Graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tensor(pub(crate) usize);

#[derive(Debug, Clone)]
enum Op {
    /// Constant input; never receives a gradient.
    Input,
    /// Leaf holding a full parameter's values.
    Param(ParamId),
    /// Leaf holding one row of a matrix parameter.
    ParamRow(ParamId, usize),
    /// W·x + b for a matrix W, vectors x and b.
    Affine {
        w: Tensor,
        x: Tensor,
        b: Tensor,
    },
    Concat(Vec<Tensor>),
    Add(Tensor, Tensor),
    Sub(Tensor, Tensor),
    Mul(Tensor, Tensor),
    Scale(Tensor, f64),
    Sigmoid(Tensor),
    Tanh(Tensor),
    Relu(Tensor),
    Sum(Tensor),
    Pick(Tensor, usize),
}

#[derive(Debug, Clone)]
struct Node {
    op: Op,
    shape: Vec<usize>,
    values: Vec<f64>,
    /// Present iff the node requires a gradient.
    grad: Option<Vec<f64>>,
}

/// A single-use computation tape. Nodes reference only earlier nodes, so a
/// reverse sweep visits every node exactly once.
#[derive(Debug, Default)]
pub struct Graph {
    nodes: Vec<Node>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn values(&self, t: Tensor) -> &[f64] {
        &self.nodes[t.0].values
    }

    pub fn value(&self, t: Tensor) -> f64 {
        debug_assert_eq!(self.nodes[t.0].values.len(), 1);
        self.nodes[t.0].values[0]
    }

    pub fn shape(&self, t: Tensor) -> &[usize] {
        &self.nodes[t.0].shape
    }

    pub fn requires_grad(&self, t: Tensor) -> bool {
        self.nodes[t.0].grad.is_some()
    }

    /// Gradient of a node after `backward`; `None` for constants.
    pub fn grad(&self, t: Tensor) -> Option<&[f64]> {
        self.nodes[t.0].grad.as_deref()
    }

    fn push(&mut self, op: Op, shape: Vec<usize>, values: Vec<f64>, requires_grad: bool) -> Tensor {
        debug_assert_eq!(shape.iter().product::<usize>(), values.len());
        let grad = requires_grad.then(|| vec![0.0; values.len()]);
        self.nodes.push(Node {
            op,
            shape,
            values,
            grad,
        });
        Tensor(self.nodes.len() - 1)
    }

    /// Constant vector input (no gradient slot).
    pub fn input(&mut self, values: Vec<f64>) -> Tensor {
        let shape = vec![values.len()];
        self.push(Op::Input, shape, values, false)
    }

    pub fn scalar(&mut self, v: f64) -> Tensor {
        self.push(Op::Input, vec![1], vec![v], false)
    }

    /// Leaf copying a parameter's current values onto the tape.
    pub fn param(&mut self, store: &ParamStore, id: ParamId) -> Tensor {
        let p = store.get(id);
        self.push(Op::Param(id), p.shape.clone(), p.values.clone(), true)
    }

    /// Leaf for one row of a matrix parameter (embedding lookup).
    pub fn param_row(&mut self, store: &ParamStore, id: ParamId, row: usize) -> Result<Tensor> {
        let p = store.get(id);
        if p.shape.len() != 2 || row >= p.shape[0] {
            return Err(Error::usage(format!(
                "row {row} out of range for parameter {} with shape {:?}",
                p.name, p.shape
            )));
        }
        let cols = p.shape[1];
        let values = p.values[row * cols..(row + 1) * cols].to_vec();
        Ok(self.push(Op::ParamRow(id, row), vec![cols], values, true))
    }

    /// W·x + b. `w` must be an m×k matrix, `x` a k-vector, `b` an m-vector.
    pub fn affine(&mut self, w: Tensor, x: Tensor, b: Tensor) -> Result<Tensor> {
        let (ws, xs, bs) = (self.shape(w), self.shape(x), self.shape(b));
        if ws.len() != 2 || xs.len() != 1 || ws[1] != xs[0] {
            return Err(Error::Dimension {
                op: "affine",
                lhs: ws.to_vec(),
                rhs: xs.to_vec(),
            });
        }
        if bs.len() != 1 || bs[0] != ws[0] {
            return Err(Error::Dimension {
                op: "affine",
                lhs: ws.to_vec(),
                rhs: bs.to_vec(),
            });
        }
        let (m, k) = (ws[0], ws[1]);
        let wv = &self.nodes[w.0].values;
        let xv = &self.nodes[x.0].values;
        let bv = &self.nodes[b.0].values;
        let mut out = Vec::with_capacity(m);
        for i in 0..m {
            let row = &wv[i * k..(i + 1) * k];
            let mut acc = bv[i];
            for j in 0..k {
                acc += row[j] * xv[j];
            }
            out.push(acc);
        }
        let rg = self.requires_grad(w) || self.requires_grad(x) || self.requires_grad(b);
        Ok(self.push(Op::Affine { w, x, b }, vec![m], out, rg))
    }

    pub fn concat(&mut self, parts: &[Tensor]) -> Result<Tensor> {
        if parts.is_empty() {
            return Err(Error::usage("concat of zero parts"));
        }
        let mut out = Vec::new();
        let mut rg = false;
        for &p in parts {
            if self.shape(p).len() != 1 {
                return Err(Error::Dimension {
                    op: "concat",
                    lhs: self.shape(p).to_vec(),
                    rhs: vec![],
                });
            }
            out.extend_from_slice(&self.nodes[p.0].values);
            rg |= self.requires_grad(p);
        }
        let shape = vec![out.len()];
        Ok(self.push(Op::Concat(parts.to_vec()), shape, out, rg))
    }

    fn elementwise(&mut self, op: &'static str, a: Tensor, b: Tensor) -> Result<(Vec<f64>, bool)> {
        if self.shape(a) != self.shape(b) {
            return Err(Error::Dimension {
                op,
                lhs: self.shape(a).to_vec(),
                rhs: self.shape(b).to_vec(),
            });
        }
        let av = &self.nodes[a.0].values;
        let bv = &self.nodes[b.0].values;
        let out = match op {
            "add" => av.iter().zip(bv).map(|(x, y)| x + y).collect(),
            "sub" => av.iter().zip(bv).map(|(x, y)| x - y).collect(),
            "mul" => av.iter().zip(bv).map(|(x, y)| x * y).collect(),
            _ => unreachable!(),
        };
        Ok((out, self.requires_grad(a) || self.requires_grad(b)))
    }

    pub fn add(&mut self, a: Tensor, b: Tensor) -> Result<Tensor> {
        let (out, rg) = self.elementwise("add", a, b)?;
        let shape = self.shape(a).to_vec();
        Ok(self.push(Op::Add(a, b), shape, out, rg))
    }

    pub fn sub(&mut self, a: Tensor, b: Tensor) -> Result<Tensor> {
        let (out, rg) = self.elementwise("sub", a, b)?;
        let shape = self.shape(a).to_vec();
        Ok(self.push(Op::Sub(a, b), shape, out, rg))
    }

    /// Elementwise product.
    pub fn mul(&mut self, a: Tensor, b: Tensor) -> Result<Tensor> {
        let (out, rg) = self.elementwise("mul", a, b)?;
        let shape = self.shape(a).to_vec();
        Ok(self.push(Op::Mul(a, b), shape, out, rg))
    }

    pub fn scale(&mut self, x: Tensor, c: f64) -> Tensor {
        let out = self.nodes[x.0].values.iter().map(|v| v * c).collect();
        let shape = self.shape(x).to_vec();
        let rg = self.requires_grad(x);
        self.push(Op::Scale(x, c), shape, out, rg)
    }

    pub fn sigmoid(&mut self, x: Tensor) -> Tensor {
        let out = self.nodes[x.0]
            .values
            .iter()
            .map(|v| 1.0 / (1.0 + (-v).exp()))
            .collect();
        let shape = self.shape(x).to_vec();
        let rg = self.requires_grad(x);
        self.push(Op::Sigmoid(x), shape, out, rg)
    }

    pub fn tanh(&mut self, x: Tensor) -> Tensor {
        let out = self.nodes[x.0].values.iter().map(|v| v.tanh()).collect();
        let shape = self.shape(x).to_vec();
        let rg = self.requires_grad(x);
        self.push(Op::Tanh(x), shape, out, rg)
    }

    pub fn relu(&mut self, x: Tensor) -> Tensor {
        let out = self.nodes[x.0].values.iter().map(|v| v.max(0.0)).collect();
        let shape = self.shape(x).to_vec();
        let rg = self.requires_grad(x);
        self.push(Op::Relu(x), shape, out, rg)
    }

    /// Sum of all entries, as a scalar node.
    pub fn sum(&mut self, x: Tensor) -> Tensor {
        let s: f64 = self.nodes[x.0].values.iter().sum();
        let rg = self.requires_grad(x);
        self.push(Op::Sum(x), vec![1], vec![s], rg)
    }

    /// Scalar node holding `x[index]`.
    pub fn pick(&mut self, x: Tensor, index: usize) -> Result<Tensor> {
        if index >= self.nodes[x.0].values.len() {
            return Err(Error::usage(format!(
                "pick index {index} out of range for shape {:?}",
                self.shape(x)
            )));
        }
        let v = self.nodes[x.0].values[index];
        let rg = self.requires_grad(x);
        Ok(self.push(Op::Pick(x, index), vec![1], vec![v], rg))
    }

    fn add_grad(&mut self, t: Tensor, delta: &[f64]) {
        if let Some(g) = self.nodes[t.0].grad.as_mut() {
            for (gi, di) in g.iter_mut().zip(delta) {
                *gi += di;
            }
        }
    }

    /// Backpropagate from a scalar `loss`. Gradients of parameter leaves are
    /// accumulated into `store`; constants are skipped.
    pub fn backward(&mut self, loss: Tensor, store: &mut ParamStore) -> Result<()> {
        if self.nodes[loss.0].values.len() != 1 {
            return Err(Error::usage(format!(
                "backward requires a scalar loss, got shape {:?}",
                self.shape(loss)
            )));
        }
        if self.nodes[loss.0].grad.is_none() {
            // Loss does not depend on any parameter; nothing to do.
            return Ok(());
        }
        self.nodes[loss.0].grad.as_mut().unwrap()[0] = 1.0;
        for i in (0..=loss.0).rev() {
            let g = match self.nodes[i].grad.clone() {
                Some(g) => g,
                None => continue,
            };
            match self.nodes[i].op.clone() {
                Op::Input => {}
                Op::Param(pid) => store.accumulate_grad(pid, 0, &g),
                Op::ParamRow(pid, row) => {
                    let cols = store.get(pid).shape[1];
                    store.accumulate_grad(pid, row * cols, &g);
                }
                Op::Affine { w, x, b } => {
                    let (m, k) = (self.nodes[w.0].shape[0], self.nodes[w.0].shape[1]);
                    if self.nodes[x.0].grad.is_some() {
                        let wv = &self.nodes[w.0].values;
                        let mut gx = vec![0.0; k];
                        for i in 0..m {
                            let gi = g[i];
                            let row = &wv[i * k..(i + 1) * k];
                            for j in 0..k {
                                gx[j] += gi * row[j];
                            }
                        }
                        self.add_grad(x, &gx);
                    }
                    if self.nodes[w.0].grad.is_some() {
                        let xv = self.nodes[x.0].values.clone();
                        let gw = self.nodes[w.0].grad.as_mut().unwrap();
                        for i in 0..m {
                            let gi = g[i];
                            for j in 0..k {
                                gw[i * k + j] += gi * xv[j];
                            }
                        }
                    }
                    self.add_grad(b, &g);
                }
                Op::Concat(parts) => {
                    let mut off = 0;
                    for p in parts {
                        let len = self.nodes[p.0].values.len();
                        let slice = g[off..off + len].to_vec();
                        self.add_grad(p, &slice);
                        off += len;
                    }
                }
                Op::Add(a, b) => {
                    self.add_grad(a, &g);
                    self.add_grad(b, &g);
                }
                Op::Sub(a, b) => {
                    self.add_grad(a, &g);
                    let neg: Vec<f64> = g.iter().map(|v| -v).collect();
                    self.add_grad(b, &neg);
                }
                Op::Mul(a, b) => {
                    let ga: Vec<f64> = g
                        .iter()
                        .zip(&self.nodes[b.0].values)
                        .map(|(gi, bv)| gi * bv)
                        .collect();
                    let gb: Vec<f64> = g
                        .iter()
                        .zip(&self.nodes[a.0].values)
                        .map(|(gi, av)| gi * av)
                        .collect();
                    self.add_grad(a, &ga);
                    self.add_grad(b, &gb);
                }
                Op::Scale(x, c) => {
                    let gx: Vec<f64> = g.iter().map(|v| v * c).collect();
                    self.add_grad(x, &gx);
                }
                Op::Sigmoid(x) => {
                    let gx: Vec<f64> = g
                        .iter()
                        .zip(&self.nodes[i].values)
                        .map(|(gi, y)| gi * y * (1.0 - y))
                        .collect();
                    self.add_grad(x, &gx);
                }
                Op::Tanh(x) => {
                    let gx: Vec<f64> = g
                        .iter()
                        .zip(&self.nodes[i].values)
                        .map(|(gi, y)| gi * (1.0 - y * y))
                        .collect();
                    self.add_grad(x, &gx);
                }
                Op::Relu(x) => {
                    let gx: Vec<f64> = g
                        .iter()
                        .zip(&self.nodes[x.0].values)
                        .map(|(gi, v)| if *v > 0.0 { *gi } else { 0.0 })
                        .collect();
                    self.add_grad(x, &gx);
                }
                Op::Sum(x) => {
                    let gx = vec![g[0]; self.nodes[x.0].values.len()];
                    self.add_grad(x, &gx);
                }
                Op::Pick(x, index) => {
                    if let Some(gx) = self.nodes[x.0].grad.as_mut() {
                        gx[index] += g[0];
                    }
                }
            }
        }
        Ok(())
    }
}
