/**
 * Admin area: login (stores the token for the session), content list,
 * and the create/edit form with a map-click location picker.
 */

import { ApiClient, ApiRequestError } from "./api.js";
import { renderMap } from "./map.js";
import type { TokenStore } from "./session.js";
import {
  CATEGORY_LABELS,
  type Category,
  type LonLat,
  type SpaceDraftBody,
  type SpaceFeature,
  markerOf,
} from "./types.js";
import { el } from "./views.js";

export interface AdminDeps {
  doc: Document;
  api: ApiClient;
  tokens: TokenStore;
  navigate: (path: string) => void;
}

/** 401 means the stored token went bad: drop it and return to login. */
function handleAuthFailure(deps: AdminDeps, err: unknown): boolean {
  if (err instanceof ApiRequestError && err.status === 401) {
    deps.tokens.set(null);
    deps.navigate("/admin");
    return true;
  }
  return false;
}

export function renderLogin(deps: AdminDeps, main: HTMLElement): void {
  const { doc } = deps;
  main.replaceChildren();

  if (deps.tokens.get() !== null) {
    const toContent = el(doc, "a", { href: "/admin/content", "data-link": "" }, "Kelola konten");
    const logout = el(doc, "button", { class: "logout" }, "Keluar");
    logout.addEventListener("click", () => {
      deps.tokens.set(null);
      deps.navigate("/admin");
    });
    main.append(
      el(
        doc,
        "section",
        { class: "page page-admin" },
        el(doc, "h2", {}, "Admin"),
        el(doc, "p", {}, "Anda sudah masuk."),
        toContent,
        logout,
      ),
    );
    return;
  }

  const message = el(doc, "p", { class: "login-error", role: "alert" });
  const input = el(doc, "input", {
    type: "password",
    name: "token",
    placeholder: "Token admin",
    autocomplete: "off",
  }) as HTMLInputElement;
  const form = el(
    doc,
    "form",
    { class: "login-form" },
    input,
    el(doc, "button", { type: "submit" }, "Masuk"),
  );
  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    const token = input.value.trim();
    if (!token) {
      message.textContent = "Masukkan token terlebih dahulu.";
      return;
    }
    void deps.api
      .verifyToken(token)
      .then((ok) => {
        if (ok) {
          deps.tokens.set(token);
          deps.navigate("/admin/content");
        } else {
          message.textContent = "Token salah. Periksa kembali.";
        }
      })
      .catch(() => {
        message.textContent = "Tidak dapat menghubungi layanan. Coba lagi.";
      });
  });

  main.append(
    el(
      doc,
      "section",
      { class: "page page-admin" },
      el(doc, "h2", {}, "Masuk Admin"),
      el(doc, "p", {}, "Halaman pengelolaan konten memerlukan token admin."),
      form,
      message,
    ),
  );
}

export async function renderAdminList(deps: AdminDeps, main: HTMLElement): Promise<void> {
  const { doc } = deps;
  const collection = await deps.api.listSpaces();
  main.replaceChildren();

  const table = el(doc, "table", { class: "admin-table" });
  const head = el(
    doc,
    "tr",
    {},
    el(doc, "th", {}, "Nama"),
    el(doc, "th", {}, "Kategori"),
    el(doc, "th", {}, "Diperbarui"),
    el(doc, "th", {}, "Aksi"),
  );
  table.append(head);

  for (const feature of collection.features) {
    const props = feature.properties;
    const edit = el(
      doc,
      "a",
      { href: `/admin/content/${props.id}`, "data-link": "", class: "edit-link" },
      "Ubah",
    );
    const remove = el(doc, "button", { class: "delete-button" }, "Hapus");
    remove.addEventListener("click", () => {
      // two-step delete instead of a blocking confirm dialog
      if (remove.getAttribute("data-armed") === null) {
        remove.setAttribute("data-armed", "");
        remove.textContent = "Yakin? Klik lagi";
        return;
      }
      void deps.api
        .deleteSpace(props.id)
        .then(() => renderAdminList(deps, main))
        .catch((err) => {
          if (!handleAuthFailure(deps, err)) {
            remove.textContent = "Gagal menghapus";
          }
        });
    });
    table.append(
      el(
        doc,
        "tr",
        { class: "space-row", "data-id": props.id },
        el(doc, "td", {}, props.name),
        el(doc, "td", {}, CATEGORY_LABELS[props.category]),
        el(doc, "td", {}, props.updated_at),
        el(doc, "td", {}, edit, " ", remove),
      ),
    );
  }

  main.append(
    el(
      doc,
      "section",
      { class: "page page-admin-list" },
      el(doc, "h2", {}, "Kelola Konten"),
      el(doc, "p", { class: "row-count" }, `${collection.features.length} lokasi terdaftar`),
      el(doc, "a", { href: "/admin/content/new", "data-link": "", class: "add-link" }, "Tambah lokasi"),
      table,
    ),
  );
}

function fieldFor(detail: string): string {
  for (const field of ["name", "category", "description", "facilities", "photos"]) {
    if (detail.startsWith(field)) return field;
  }
  if (/^(marker|lon|lat)/.test(detail)) return "marker";
  return "";
}

/** Create form when `id` is null, edit form otherwise. */
export async function renderAdminForm(
  deps: AdminDeps,
  main: HTMLElement,
  id: string | null,
): Promise<void> {
  const { doc } = deps;
  let existing: SpaceFeature | null = null;
  if (id !== null) existing = await deps.api.getSpace(id);
  main.replaceChildren();

  let marker: LonLat | null = existing ? markerOf(existing) : null;

  const nameInput = el(doc, "input", {
    type: "text",
    name: "name",
    value: existing?.properties.name ?? "",
  }) as HTMLInputElement;

  const categorySelect = el(doc, "select", { name: "category" }) as HTMLSelectElement;
  for (const [value, label] of Object.entries(CATEGORY_LABELS)) {
    const option = el(doc, "option", { value }, label) as HTMLOptionElement;
    if (existing?.properties.category === value) option.setAttribute("selected", "");
    categorySelect.append(option);
  }

  const descriptionInput = el(doc, "textarea", { name: "description" }) as HTMLTextAreaElement;
  descriptionInput.value = existing?.properties.description ?? "";

  const facilitiesInput = el(doc, "input", {
    type: "text",
    name: "facilities",
    value: existing?.properties.facilities.join(", ") ?? "",
    placeholder: "dipisah koma",
  }) as HTMLInputElement;

  const photosInput = el(doc, "textarea", {
    name: "photos",
    placeholder: "satu jalur foto per baris",
  }) as HTMLTextAreaElement;
  photosInput.value = existing?.properties.photos.join("\n") ?? "";

  const lonView = el(doc, "input", { type: "text", class: "marker-lon", readonly: "" }) as HTMLInputElement;
  const latView = el(doc, "input", { type: "text", class: "marker-lat", readonly: "" }) as HTMLInputElement;

  const mapBox = el(doc, "div", { class: "map-box picker" });
  const drawPicker = () => {
    lonView.value = marker ? marker[0].toFixed(6) : "";
    latView.value = marker ? marker[1].toFixed(6) : "";
    const markers = marker
      ? [{ id: "picked", lon: marker[0], lat: marker[1], title: "Lokasi terpilih", selected: true }]
      : [];
    const svg = renderMap(doc, {
      markers,
      onMapClick: (lon, lat) => {
        marker = [lon, lat];
        drawPicker();
      },
    });
    mapBox.replaceChildren(svg);
  };
  drawPicker();

  const errorSlots: Record<string, HTMLElement> = {};
  const field = (label: string, name: string, control: HTMLElement) => {
    const slot = el(doc, "span", { class: "field-error", "data-field": name });
    errorSlots[name] = slot;
    return el(doc, "label", { class: "form-field" }, label, control, slot);
  };
  const formError = el(doc, "p", { class: "form-error", role: "alert" });

  const submit = el(doc, "button", { type: "submit" }, id ? "Simpan" : "Tambah");
  const form = el(
    doc,
    "form",
    { class: "space-form" },
    field("Nama", "name", nameInput),
    field("Kategori", "category", categorySelect),
    field("Deskripsi", "description", descriptionInput),
    field("Fasilitas", "facilities", facilitiesInput),
    field("Foto", "photos", photosInput),
    field(
      "Lokasi (klik peta)",
      "marker",
      el(doc, "span", { class: "marker-views" }, lonView, latView),
    ),
    mapBox,
    formError,
    submit,
  );

  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    for (const slot of Object.values(errorSlots)) slot.textContent = "";
    formError.textContent = "";

    if (!nameInput.value.trim()) {
      errorSlots["name"].textContent = "Nama wajib diisi.";
      return;
    }
    if (marker === null) {
      errorSlots["marker"].textContent = "Pilih lokasi dengan mengeklik peta.";
      return;
    }
    const draft: SpaceDraftBody = {
      name: nameInput.value.trim(),
      category: categorySelect.value as Category,
      marker,
      description: descriptionInput.value,
      facilities: facilitiesInput.value
        .split(",")
        .map((part) => part.trim())
        .filter((part) => part !== ""),
      photos: photosInput.value
        .split("\n")
        .map((line) => line.trim())
        .filter((line) => line !== ""),
    };
    const call = id === null
      ? deps.api.createSpace(draft)
      : deps.api.updateSpace(id, draft);
    void call
      .then(() => deps.navigate("/admin/content"))
      .catch((err) => {
        if (handleAuthFailure(deps, err)) return;
        if (err instanceof ApiRequestError && err.status === 422) {
          for (const detail of err.details) {
            const target = errorSlots[fieldFor(detail)];
            if (target) target.textContent = detail;
            else formError.textContent += `${detail} `;
          }
          if (!err.details.length) formError.textContent = err.message;
        } else {
          formError.textContent = "Gagal menyimpan. Coba lagi.";
        }
      });
  });

  main.append(
    el(
      doc,
      "section",
      { class: "page page-admin-form" },
      el(doc, "h2", {}, id ? "Ubah Lokasi" : "Tambah Lokasi"),
      form,
    ),
  );
}
