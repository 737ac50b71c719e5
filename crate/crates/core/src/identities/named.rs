use super::term::{Identity, Relation, Term};

fn v(k: usize) -> Term {
    Term::var(k)
}

fn join2(x: Term, y: Term) -> Term {
    Term::join([x, y])
}

fn meet2(x: Term, y: Term) -> Term {
    Term::meet([x, y])
}

/// (Veg₁) in the variables `a1, a2, b1, b2`.
pub fn veg1() -> Identity {
    let (a1, a2, b1, b2) = (v(0), v(1), v(2), v(3));
    let bt =
        |ai: &Term, bi: &Term| meet2(join2(b1.clone(), b2.clone()), join2(ai.clone(), bi.clone()));
    let bt1 = bt(&a1, &b1);
    let bt2 = bt(&a2, &b2);
    let lhs = meet2(join2(a1.clone(), b1.clone()), join2(a2.clone(), b2.clone()));
    let rhs = join2(
        meet2(join2(a1.clone(), b1), join2(a1, bt2)),
        meet2(join2(a2.clone(), bt1), join2(a2, b2)),
    );
    Identity::new("veg1", lhs, rhs, Relation::Leq, 4).expect("four variables")
}

/// (Veg₂) in the variables `a1, a2, b1, b2`.
pub fn veg2() -> Identity {
    let a = [v(0), v(1)];
    let b = [v(2), v(3)];
    let aab = |j: usize| Term::join([a[0].clone(), a[1].clone(), b[j].clone()]);
    let bt = |j: usize| meet2(join2(b[0].clone(), b[1].clone()), aab(j));
    let lhs = meet2(aab(0), aab(1));
    let rhs = Term::join(
        (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| meet2(join2(a[i].clone(), bt(j)), aab(1 - j))),
    );
    Identity::new("veg2", lhs, rhs, Relation::Eq, 4).expect("four variables")
}

/// (12.1) in the variables `x1, x2, x3, y1, y2, y3`.
pub fn splitting_b33() -> Identity {
    let x = [v(0), v(1), v(2)];
    let y = [v(3), v(4), v(5)];
    let xs = Term::join(x.clone());
    let ys = Term::join(y.clone());
    let others = |i: usize| [(i + 1) % 3, (i + 2) % 3];
    let x_hat = |i: usize| {
        let [p, q] = others(i);
        Term::join([x[p].clone(), x[q].clone(), ys.clone()])
    };
    let y_hat = |i: usize| {
        let [p, q] = others(i);
        Term::join([y[p].clone(), y[q].clone(), xs.clone()])
    };
    let lhs = Term::meet(
        (0..3).map(|j| Term::join([x[0].clone(), x[1].clone(), x[2].clone(), y[j].clone()])),
    );
    let rhs = Term::join((0..3).map(|i| Term::meet([x_hat(i), y_hat(0), y_hat(1), y_hat(2)])));
    Identity::new("splitting_b33", lhs, rhs, Relation::Leq, 6).expect("six variables")
}

/// Identity by name: `veg1`, `veg2`, `split-b33` (also `b33`, `splitting_b33`), or `gzp:2,1`.
pub fn by_name(name: &str) -> crate::Result<Identity> {
    match name {
        "veg1" => Ok(veg1()),
        "veg2" => Ok(veg2()),
        "b33" | "splitting_b33" | "split-b33" | "splitting" => Ok(splitting_b33()),
        _ => match name
            .strip_prefix("gzp:")
            .or_else(|| name.strip_prefix("gzp"))
        {
            Some(rest) => super::gazpacho(&super::GazpachoIndex::parse(rest)?),
            None => Err(crate::Error::BadParams(format!(
                "unknown identity {name:?}"
            ))),
        },
    }
}
