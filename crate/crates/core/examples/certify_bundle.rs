use hasse_core::bundle::{certify_params, verify_bundle, CertifyOptions};
use hasse_core::corpus::t1_n1_params;

fn main() -> hasse_core::Result<()> {
    let opts = CertifyOptions {
        p_max: 60,
        height: 8,
        ..CertifyOptions::default()
    };
    let bundle = certify_params(&t1_n1_params(), opts, None)?;
    println!("failures: {:?}", bundle.failures());
    println!("certificates: {}", bundle.local.certificates.len());
    println!("form hash: {}", bundle.form.sha256);
    println!("replay: {:?}", verify_bundle(&bundle));

    let mut tampered = bundle.clone();
    tampered.local.certificates[4].v_grad += 1;
    match verify_bundle(&tampered) {
        Ok(()) => println!("tampered bundle replayed?!"),
        Err(e) => println!("tampered bundle rejected at {e}"),
    }
    Ok(())
}
