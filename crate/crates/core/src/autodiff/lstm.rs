//! LSTM cell and bidirectional encoder built from tape primitives.

use crate::error::{Error, Result};

use super::graph::{Graph, Tensor};

/// Weight tensors for one LSTM cell: input, forget, output gates and the
/// cell candidate. Each matrix is d×(e+d) over the concatenated [input; h].
#[derive(Debug, Clone, Copy)]
pub struct LstmWeights {
    pub w_input: Tensor,
    pub b_input: Tensor,
    pub w_forget: Tensor,
    pub b_forget: Tensor,
    pub w_output: Tensor,
    pub b_output: Tensor,
    pub w_cell: Tensor,
    pub b_cell: Tensor,
}

/// Hidden and cell state of an LSTM.
#[derive(Debug, Clone, Copy)]
pub struct LstmState {
    pub h: Tensor,
    pub c: Tensor,
}

impl LstmState {
    /// Zero state of width `d` (constant, no gradient).
    pub fn zeros(g: &mut Graph, d: usize) -> Self {
        LstmState {
            h: g.input(vec![0.0; d]),
            c: g.input(vec![0.0; d]),
        }
    }
}

/// One LSTM step: gates over [x; h], then c' = f⊙c + i⊙g, h' = o⊙tanh(c').
pub fn lstm_step(
    g: &mut Graph,
    state: LstmState,
    input: Tensor,
    w: &LstmWeights,
) -> Result<LstmState> {
    let z = g.concat(&[input, state.h])?;
    let i_gate = {
        let a = g.affine(w.w_input, z, w.b_input)?;
        g.sigmoid(a)
    };
    let f_gate = {
        let a = g.affine(w.w_forget, z, w.b_forget)?;
        g.sigmoid(a)
    };
    let o_gate = {
        let a = g.affine(w.w_output, z, w.b_output)?;
        g.sigmoid(a)
    };
    let candidate = {
        let a = g.affine(w.w_cell, z, w.b_cell)?;
        g.tanh(a)
    };
    let keep = g.mul(f_gate, state.c)?;
    let write = g.mul(i_gate, candidate)?;
    let c = g.add(keep, write)?;
    let c_act = g.tanh(c);
    let h = g.mul(o_gate, c_act)?;
    Ok(LstmState { h, c })
}

/// Weights for one bidirectional layer.
#[derive(Debug, Clone, Copy)]
pub struct BiLstmLayer {
    pub forward: LstmWeights,
    pub backward: LstmWeights,
    pub hidden: usize,
}

/// Encode a sequence with stacked bidirectional LSTM layers.
///
/// Output i of a layer is the forward state after inputs 1..=i concatenated
/// with the backward state after inputs n..=i; layer outputs feed the next
/// layer. Output width is 2·hidden of the last layer.
pub fn bilstm_encode(
    g: &mut Graph,
    inputs: &[Tensor],
    layers: &[BiLstmLayer],
) -> Result<Vec<Tensor>> {
    if inputs.is_empty() {
        return Err(Error::usage("bilstm_encode on an empty sequence"));
    }
    if layers.is_empty() {
        return Err(Error::usage("bilstm_encode with zero layers"));
    }
    let mut seq: Vec<Tensor> = inputs.to_vec();
    for layer in layers {
        let n = seq.len();
        let mut fwd = Vec::with_capacity(n);
        let mut state = LstmState::zeros(g, layer.hidden);
        for &x in &seq {
            state = lstm_step(g, state, x, &layer.forward)?;
            fwd.push(state.h);
        }
        let mut bwd = vec![None; n];
        let mut state = LstmState::zeros(g, layer.hidden);
        for i in (0..n).rev() {
            state = lstm_step(g, state, seq[i], &layer.backward)?;
            bwd[i] = Some(state.h);
        }
        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            next.push(g.concat(&[fwd[i], bwd[i].unwrap()])?);
        }
        seq = next;
    }
    Ok(seq)
}

/// Final forward state ∥ final backward state, used for word encodings.
pub fn bilstm_final(g: &mut Graph, inputs: &[Tensor], layer: &BiLstmLayer) -> Result<Tensor> {
    if inputs.is_empty() {
        return Err(Error::usage("bilstm_final on an empty sequence"));
    }
    let mut state = LstmState::zeros(g, layer.hidden);
    for &x in inputs {
        state = lstm_step(g, state, x, &layer.forward)?;
    }
    let fwd = state.h;
    let mut state = LstmState::zeros(g, layer.hidden);
    for &x in inputs.iter().rev() {
        state = lstm_step(g, state, x, &layer.backward)?;
    }
    let bwd = state.h;
    g.concat(&[fwd, bwd])
}
