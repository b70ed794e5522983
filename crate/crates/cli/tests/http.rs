use std::sync::Arc;

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use storyuml_cli::server::{router, AppState};
use storyuml_core::diagram::{read_plantuml, render};
use storyuml_core::{Pipeline, PipelineConfig, UseCaseModel};
use tower::ServiceExt;

const CAR_REPAIR: &str = "A customer calls a car repair shop to make an appointment for an oil \
    change. The receptionist checks the availability of the mechanic and schedules the \
    appointment for the next available time slot.";

fn app(dir: &std::path::Path) -> Router {
    let pipeline = Pipeline::from_config(PipelineConfig {
        filter: false,
        ..PipelineConfig::default()
    })
    .unwrap();
    let (state, skipped) = AppState::open(pipeline, dir.to_path_buf()).unwrap();
    assert!(skipped.is_empty(), "{skipped:?}");
    router(Arc::new(state), None)
}

async fn call(app: &Router, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, String) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => req
            .header("content-type", "application/json")
            .body(Body::from(b.to_string()))
            .unwrap(),
        None => req.body(Body::empty()).unwrap(),
    };
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

async fn json_call(app: &Router, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let (status, text) = call(app, method, uri, body).await;
    (status, serde_json::from_str(&text).unwrap_or(Value::Null))
}

async fn create(app: &Router, story: &str) -> (String, Value) {
    let (status, v) = json_call(app, Method::POST, "/api/projects", Some(json!({ "story": story }))).await;
    assert_eq!(status, StatusCode::CREATED, "{v}");
    (v["project_id"].as_str().unwrap().to_string(), v)
}

#[tokio::test]
async fn create_returns_single_use_case_diagram() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let (id, v) = create(&app, "A customer buys a product.").await;
    let expected = "@startuml\n    left to right direction\n    actor \"Customer\" as Cu\n    rectangle {\n      usecase \"buy product\" as UC1\n    }\n    Cu --> UC1\n@enduml\n";
    assert_eq!(v["result"]["plantuml"], expected);
    assert_eq!(v["revision"], 0);
    let (status, text) = call(&app, Method::GET, &format!("/api/projects/{id}/plantuml"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(text, expected);
    assert!(dir.path().join(format!("{id}.json")).exists());
}

#[tokio::test]
async fn edits_with_revisions() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let (id, _) = create(&app, CAR_REPAIR).await;
    let edits = format!("/api/projects/{id}/edits");

    let reassign = json!({
        "command": {"type": "ReassignUseCase", "phrase": "schedule appointment", "from": "receptionist", "to": "customer"},
        "expected_revision": 0,
    });
    let (status, v) = json_call(&app, Method::POST, &edits, Some(reassign)).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    assert_eq!(v["revision"], 1);
    let plantuml = v["plantuml"].as_str().unwrap();
    assert!(plantuml.contains("    Cu --> UC2\n"));
    let model: UseCaseModel = serde_json::from_value(v["model"].clone()).unwrap();
    assert_eq!(render(&model), plantuml);
    assert_eq!(read_plantuml(plantuml).unwrap().use_cases("customer").len(), 2);

    let stale = json!({
        "command": {"type": "RenameActor", "key": "customer", "new_name": "Client"},
        "expected_revision": 0,
    });
    let (status, v) = json_call(&app, Method::POST, &edits, Some(stale)).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(v["code"], "revision_conflict");

    let dup = json!({"command": {"type": "AddActor", "name": "Customer"}, "expected_revision": 1});
    let (status, v) = json_call(&app, Method::POST, &edits, Some(dup)).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["code"], "duplicate_actor");
    assert!(v["message"].as_str().unwrap().contains("customer"));

    let (status, v) = json_call(&app, Method::POST, &edits, Some(json!({"command": {"type": "Nope"}, "expected_revision": 1}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["code"], "invalid_request");

    let (status, v) = json_call(&app, Method::POST, &format!("/api/projects/{id}/undo"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["revision"], 0);
    assert!(v["plantuml"].as_str().unwrap().contains("    Re --> UC3\n"));

    let (status, v) = json_call(&app, Method::POST, &format!("/api/projects/{id}/undo"), None).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["code"], "nothing_to_undo");
}

#[tokio::test]
async fn gets_do_not_change_revision() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let (id, _) = create(&app, CAR_REPAIR).await;
    let rename = json!({"command": {"type": "RenameActor", "key": "customer", "new_name": "Client"}, "expected_revision": 0});
    json_call(&app, Method::POST, &format!("/api/projects/{id}/edits"), Some(rename)).await;
    for _ in 0..3 {
        let (status, v) = json_call(&app, Method::GET, &format!("/api/projects/{id}"), None).await;
        assert_eq!(status, StatusCode::OK);
        assert_eq!(v["revision"], 1);
        assert!(v["plantuml"].as_str().unwrap().contains("actor \"Client\""));
        assert!(v["result"]["corrected_text"].is_string());
        call(&app, Method::GET, &format!("/api/projects/{id}/plantuml"), None).await;
    }
}

#[tokio::test]
async fn errors_and_delete() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let (status, v) = json_call(&app, Method::GET, "/api/projects/unknown-id", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(v["code"], "not_found");
    let (status, _) = call(&app, Method::GET, "/api/projects/..%2Fetc/plantuml", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);

    let (status, v) = json_call(&app, Method::POST, "/api/projects", Some(json!({"story": "  "}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["code"], "empty_input");
    let (status, _) = json_call(&app, Method::POST, "/api/projects", Some(json!({"text": "x"}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);

    let (id, v) = create(&app, "He buys a product.").await;
    assert_eq!(v["result"]["diagnostics"][0]["code"], "no_actors_found");
    assert_eq!(v["model"]["actors"], json!([]));

    let (status, _) = call(&app, Method::DELETE, &format!("/api/projects/{id}"), None).await;
    assert_eq!(status, StatusCode::NO_CONTENT);
    assert!(!dir.path().join(format!("{id}.json")).exists());
    let (status, _) = call(&app, Method::GET, &format!("/api/projects/{id}"), None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = call(&app, Method::DELETE, &format!("/api/projects/{id}"), None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn create_options_and_restart() {
    let dir = tempfile::tempdir().unwrap();
    let app1 = app(dir.path());
    let (status, v) = json_call(
        &app1,
        Method::POST,
        "/api/projects",
        Some(json!({"story": "A customer buys a product.", "system_name": "Shop", "filter": true})),
    )
    .await;
    assert_eq!(status, StatusCode::CREATED);
    let id = v["project_id"].as_str().unwrap().to_string();
    assert!(v["plantuml"].as_str().unwrap().contains("rectangle \"Shop\" {"));
    let add = json!({"command": {"type": "AddUseCase", "actor": "customer", "phrase": "track order"}, "expected_revision": 0});
    json_call(&app1, Method::POST, &format!("/api/projects/{id}/edits"), Some(add)).await;

    // a new service over the same directory sees the saved project
    let app2 = app(dir.path());
    let (status, v) = json_call(&app2, Method::GET, &format!("/api/projects/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["revision"], 1);
    assert!(v["plantuml"].as_str().unwrap().contains("usecase \"track order\" as UC2"));
}

#[tokio::test]
async fn concurrent_edits_serialize() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let (id, _) = create(&app, CAR_REPAIR).await;
    let mut handles = Vec::new();
    for i in 0..8 {
        let app = app.clone();
        let uri = format!("/api/projects/{id}/edits");
        handles.push(tokio::spawn(async move {
            let body = json!({"command": {"type": "AddActor", "name": format!("Actor{i}")}, "expected_revision": 0});
            call(&app, Method::POST, &uri, Some(body)).await.0
        }));
    }
    let mut ok = 0;
    for h in handles {
        match h.await.unwrap() {
            StatusCode::OK => ok += 1,
            StatusCode::CONFLICT => {}
            other => panic!("{other}"),
        }
    }
    assert_eq!(ok, 1);
    let (_, v) = json_call(&app, Method::GET, &format!("/api/projects/{id}"), None).await;
    assert_eq!(v["revision"], 1);
}

#[tokio::test]
async fn root_page_served() {
    let dir = tempfile::tempdir().unwrap();
    let (status, text) = call(&app(dir.path()), Method::GET, "/", None).await;
    assert_eq!(status, StatusCode::OK);
    assert!(text.contains("/api/projects"));

    let assets = tempfile::tempdir().unwrap();
    std::fs::write(assets.path().join("index.html"), "<p>editor</p>").unwrap();
    let pipeline = Pipeline::from_config(PipelineConfig { filter: false, ..Default::default() }).unwrap();
    let (state, _) = AppState::open(pipeline, dir.path().to_path_buf()).unwrap();
    let app = router(Arc::new(state), Some(assets.path()));
    let (status, text) = call(&app, Method::GET, "/", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(text, "<p>editor</p>");
    let (status, _) = call(&app, Method::GET, "/api/nothing", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}
