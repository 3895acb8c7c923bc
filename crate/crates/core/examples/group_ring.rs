//! Arithmetic in Z[C4]: products, character evaluations, idempotents and
//! a reduced norm over the non-commutative algebra Q[S3].

use weil_stark::fixtures::default_dir;
use weil_stark::groupring::character::{evaluate, idempotent};
use weil_stark::groupring::{all_characters, FiniteAbelianGroup, GroupAlgebra, GroupRingElement, WedderburnData};

fn main() -> weil_stark::Result<()> {
    let c4 = FiniteAbelianGroup::new(&[4])?;
    let t = c4.table().clone();
    let x = GroupRingElement::from_i64(t.clone(), &[1, -1, 0, 0])?;
    let y = GroupRingElement::from_i64(t, &[2, 0, 1, 0])?;
    println!("x = {:?}\ny = {:?}\nxy = {:?}", x.to_table(), y.to_table(), x.mul(&y).to_table());
    for chi in all_characters(&c4) {
        println!("{}(x) = {:?}   e_{} = {:?}", chi.label(), evaluate(&c4, &chi, &x), chi.label(), idempotent(&c4, &chi));
    }

    let s3 = std::sync::Arc::new(WedderburnData::load(&default_dir().join("wedderburn_S3.json"))?);
    let alg = GroupAlgebra::Semisimple(s3.clone());
    let r = s3.group.index_of("r").expect("generator r");
    let m = vec![vec![GroupRingElement::from_group_element(s3.group.clone(), r)]];
    println!("Nrd(r) in Q[S3] = {:?}", alg.reduced_norm(&m)?.to_table());
    Ok(())
}
