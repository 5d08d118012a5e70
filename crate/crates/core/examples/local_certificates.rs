use hasse_core::corpus::t1_n1_params;
use hasse_core::cyclotomic::minimal_polynomial;
use hasse_core::forms::build_form;
use hasse_core::localsolve::{local_sweep, verify_certificate};

fn main() -> hasse_core::Result<()> {
    let params = t1_n1_params();
    let basis = minimal_polynomial(7, params.variant.theta())?;
    let form = build_form(&params, &basis)?.form;

    let report = local_sweep(&params, &basis, 100)?;
    for c in &report.certificates {
        let ok = verify_certificate(&form, c).is_ok();
        let point: Vec<String> = c.point.iter().map(|v| v.to_string()).collect();
        println!(
            "p = {:>3}  k = {}  v_f = {}  v_grad = {}  {:<22} ({})  replay {}",
            c.p,
            c.k,
            c.v_f,
            c.v_grad,
            format!("{:?}", c.branch),
            point.join(", "),
            if ok { "ok" } else { "FAILED" }
        );
    }
    for f in &report.failures {
        println!("p = {}: {}", f.p, f.reason);
    }
    Ok(())
}
