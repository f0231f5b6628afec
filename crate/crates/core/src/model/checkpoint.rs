//! Model checkpoints: header, lexicon tables and the parameter archive.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::autodiff::{
    read_params, read_str, read_u32, read_u64, write_params, write_str, write_u32, write_u64,
};
use crate::error::{Error, Result};
use crate::lexicon::Lexicon;
use crate::strategy::SharingStrategy;

use super::{Model, ModelDims};

const MAGIC: &[u8; 4] = b"XPRS";
const VERSION: u32 = 1;

fn write_dims<W: Write>(w: &mut W, d: &ModelDims) -> Result<()> {
    for v in [
        d.word_emb,
        d.char_emb,
        d.char_hidden,
        d.word_hidden,
        d.lang_emb,
        d.mlp_hidden,
        d.stack_feats,
        d.buffer_feats,
    ] {
        write_u32(w, v as u32)?;
    }
    write_u64(w, d.lambda.to_bits())?;
    Ok(())
}

fn read_dims<R: Read>(r: &mut R) -> Result<ModelDims> {
    let mut vals = [0usize; 8];
    for v in &mut vals {
        *v = read_u32(r)? as usize;
    }
    let lambda = f64::from_bits(read_u64(r)?);
    Ok(ModelDims {
        word_emb: vals[0],
        char_emb: vals[1],
        char_hidden: vals[2],
        word_hidden: vals[3],
        lang_emb: vals[4],
        mlp_hidden: vals[5],
        stack_feats: vals[6],
        buffer_feats: vals[7],
        lambda,
    })
}

pub fn write_model<W: Write>(w: &mut W, model: &Model) -> Result<()> {
    w.write_all(MAGIC)?;
    write_u32(w, VERSION)?;
    write_str(w, &model.strategy.to_string())?;
    write_dims(w, &model.dims)?;
    write_u64(w, model.lexicon.hash())?;
    model.lexicon.write(w)?;
    write_params(w, &model.store)?;
    Ok(())
}

pub fn read_model<R: Read>(r: &mut R) -> Result<Model> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::config("not a model checkpoint".to_string()));
    }
    let version = read_u32(r)?;
    if version != VERSION {
        return Err(Error::config(format!(
            "unsupported checkpoint version {version}"
        )));
    }
    let strategy: SharingStrategy = read_str(r)?.parse()?;
    let dims = read_dims(r)?;
    let expected_hash = read_u64(r)?;
    let lexicon = Lexicon::read(r)?;
    if lexicon.hash() != expected_hash {
        return Err(Error::config(
            "checkpoint lexicon hash mismatch".to_string(),
        ));
    }
    if lexicon.strategy != strategy {
        return Err(Error::config(
            "checkpoint lexicon strategy mismatch".to_string(),
        ));
    }
    let store = read_params(r)?;
    Ok(Model {
        store,
        strategy,
        dims,
        lexicon,
    })
}

pub fn save_model(path: &Path, model: &Model) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_model(&mut w, model)
}

pub fn load_model(path: &Path) -> Result<Model> {
    let mut r = BufReader::new(File::open(path)?);
    read_model(&mut r)
}
